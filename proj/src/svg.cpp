#include "tfhom/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tfhom/error.hpp"

namespace tfhom::svg {

namespace {

// viridis anchors at t = 0, 1/8, ..., 1
constexpr unsigned char anchors[9][3] = {
    {68, 1, 84},   {71, 44, 122},  {59, 81, 139},  {44, 113, 142}, {33, 144, 141},
    {39, 173, 129}, {92, 200, 99}, {170, 220, 50}, {253, 231, 37},
};

struct Lut {
    std::array<std::array<unsigned char, 3>, 256> rgb{};
    Lut() {
        for (int i = 0; i < 256; ++i) {
            const double s = i / 255.0 * 8.0;
            const int k = std::min(static_cast<int>(s), 7);
            const double f = s - k;
            for (int c = 0; c < 3; ++c) {
                rgb[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] =
                    static_cast<unsigned char>(std::lround(anchors[k][c] * (1 - f) + anchors[k + 1][c] * f));
            }
        }
    }
};

const Lut& lut() {
    static const Lut table;
    return table;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::array<unsigned char, 3> colormap(double t) {
    if (!std::isfinite(t)) t = 0.0;
    const int i = static_cast<int>(std::lround(std::clamp(t, 0.0, 1.0) * 255.0));
    return lut().rgb[static_cast<std::size_t>(i)];
}

std::string heatmap(const StructuredGrid2D& grid, std::span<const double> values, const std::string& title) {
    if (values.size() != static_cast<std::size_t>(grid.node_count())) throw_argument("heatmap: field length does not match grid");
    const int n = grid.n();
    const int cells = std::min(n, 128);
    const int stride = n / cells;
    const double lo = *std::min_element(values.begin(), values.end());
    const double hi = *std::max_element(values.begin(), values.end());
    const double span = hi > lo ? hi - lo : 1.0;
    const int size = 512;
    const double px = static_cast<double>(size) / cells;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 120 << "\" height=\"" << size + 60
       << "\" shape-rendering=\"crispEdges\">\n";
    os << "<text x=\"10\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << escape(title) << "</text>\n";
    os << "<g transform=\"translate(10,40)\">\n";
    for (int cj = 0; cj < cells; ++cj) {
        for (int ci = 0; ci < cells; ++ci) {
            // cell colour = mean of its four corner nodes
            const int i = ci * stride;
            const int j = cj * stride;
            const double v = 0.25 * (values[static_cast<std::size_t>(grid.node_index(i, j))] +
                                     values[static_cast<std::size_t>(grid.node_index(i + stride, j))] +
                                     values[static_cast<std::size_t>(grid.node_index(i + stride, j + stride))] +
                                     values[static_cast<std::size_t>(grid.node_index(i, j + stride))]);
            const auto c = colormap((v - lo) / span);
            // y axis points up
            os << "<rect x=\"" << fmt(ci * px) << "\" y=\"" << fmt((cells - 1 - cj) * px) << "\" width=\""
               << fmt(px) << "\" height=\"" << fmt(px) << "\" fill=\"rgb(" << int(c[0]) << "," << int(c[1]) << ","
               << int(c[2]) << ")\"/>\n";
        }
    }
    os << "</g>\n";
    // colour bar
    os << "<g transform=\"translate(" << size + 30 << ",40)\">\n";
    for (int k = 0; k < 64; ++k) {
        const auto c = colormap(1.0 - k / 63.0);
        os << "<rect x=\"0\" y=\"" << k * 8 << "\" width=\"20\" height=\"8\" fill=\"rgb(" << int(c[0]) << ","
           << int(c[1]) << "," << int(c[2]) << ")\"/>\n";
    }
    os << "<text x=\"24\" y=\"10\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(hi) << "</text>\n";
    os << "<text x=\"24\" y=\"512\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(lo) << "</text>\n";
    os << "</g>\n</svg>\n";
    return os.str();
}

std::string loglog(const std::vector<Series>& series, const std::string& title, const std::string& x_label,
                   const std::string& y_label) {
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
            xmin = std::min(xmin, std::log10(s.x[i]));
            xmax = std::max(xmax, std::log10(s.x[i]));
            ymin = std::min(ymin, std::log10(s.y[i]));
            ymax = std::max(ymax, std::log10(s.y[i]));
        }
    }
    if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    xmin = std::floor(xmin * 2) / 2 - 0.1;
    xmax = std::ceil(xmax * 2) / 2 + 0.1;
    ymin = std::floor(ymin) - 0.2;
    ymax = std::ceil(ymax) + 0.2;
    const double w = 520, h = 360, left = 80, top = 40;
    auto sx = [&](double lx) { return left + (lx - xmin) / (xmax - xmin) * w; };
    auto sy = [&](double ly) { return top + h - (ly - ymin) / (ymax - ymin) * h; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w + left + 180 << "\" height=\"" << h + top + 60
       << "\" font-family=\"sans-serif\">\n";
    os << "<text x=\"" << left << "\" y=\"24\" font-size=\"14\">" << escape(title) << "</text>\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << w << "\" height=\"" << h
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int d = static_cast<int>(std::ceil(ymin)); d <= static_cast<int>(std::floor(ymax)); ++d) {
        os << "<line x1=\"" << left << "\" x2=\"" << left + w << "\" y1=\"" << fmt(sy(d)) << "\" y2=\"" << fmt(sy(d))
           << "\" stroke=\"#ddd\"/>\n";
        os << "<text x=\"" << left - 6 << "\" y=\"" << fmt(sy(d) + 4) << "\" font-size=\"11\" text-anchor=\"end\">1e"
           << d << "</text>\n";
    }
    for (double lx = std::ceil(xmin * 2) / 2; lx <= xmax; lx += 0.5) {
        os << "<line y1=\"" << top << "\" y2=\"" << top + h << "\" x1=\"" << fmt(sx(lx)) << "\" x2=\"" << fmt(sx(lx))
           << "\" stroke=\"#ddd\"/>\n";
        os << "<text x=\"" << fmt(sx(lx)) << "\" y=\"" << top + h + 16 << "\" font-size=\"11\" text-anchor=\"middle\">"
           << fmt(std::pow(10.0, lx)) << "</text>\n";
    }
    os << "<text x=\"" << left + w / 2 << "\" y=\"" << top + h + 40 << "\" font-size=\"12\" text-anchor=\"middle\">"
       << escape(x_label) << "</text>\n";
    os << "<text transform=\"translate(20," << top + h / 2 << ") rotate(-90)\" font-size=\"12\" text-anchor=\"middle\">"
       << escape(y_label) << "</text>\n";
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* colour = palette[k % 6];
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
            os << fmt(sx(std::log10(s.x[i]))) << "," << fmt(sy(std::log10(s.y[i]))) << " ";
        }
        os << "\"/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
            os << "<circle cx=\"" << fmt(sx(std::log10(s.x[i]))) << "\" cy=\"" << fmt(sy(std::log10(s.y[i])))
               << "\" r=\"3.5\" fill=\"" << colour << "\"/>\n";
        }
        os << "<text x=\"" << left + w + 14 << "\" y=\"" << top + 16 + 18 * k << "\" font-size=\"12\" fill=\""
           << colour << "\">" << escape(s.label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw Error(ErrorKind::io, "failed writing " + path.string());
}

}  // namespace tfhom::svg
