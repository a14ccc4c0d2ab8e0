#include "tfhom/fields.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "tfhom/error.hpp"

namespace tfhom {

namespace {

double bubble(Point y) { return y.x * y.y * (1.0 - y.x) * (1.0 - y.y); }

// U = [1/5, 4/5]^2, closed
bool in_inclusion(Point y) { return y.x >= 0.2 && y.x <= 0.8 && y.y >= 0.2 && y.y <= 0.8; }

}  // namespace

CoefficientField::CoefficientField(FieldKind kind, std::string id, double mu, double upper, double value,
                                   std::function<double(double)> profile)
    : kind_(kind), id_(std::move(id)), mu_(mu), upper_(upper), value_(value), profile_(std::move(profile)) {}

CoefficientField CoefficientField::smooth_low() { return {FieldKind::smooth_low, "smooth-low", 9.0, 11.0}; }
CoefficientField CoefficientField::smooth_high() { return {FieldKind::smooth_high, "smooth-high", 1.0, 19.0}; }
CoefficientField CoefficientField::piecewise_low() { return {FieldKind::piecewise_low, "piecewise-low", 10.0, 11.0}; }
CoefficientField CoefficientField::piecewise_high() {
    return {FieldKind::piecewise_high, "piecewise-high", 10.0, 20.0};
}

CoefficientField CoefficientField::constant(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw_config("constant coefficient must be positive and finite");
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, c);
    return {FieldKind::constant, "constant:" + std::string(buf, res.ptr), c, c, c};
}

CoefficientField CoefficientField::layered(std::string name, std::function<double(double)> profile, double mu,
                                           double upper) {
    if (!(mu > 0.0) || upper < mu) throw_config("layered field needs 0 < mu <= upper");
    return {FieldKind::layered, "layered:" + name, mu, upper, 0.0, std::move(profile)};
}

CoefficientField CoefficientField::parse(std::string_view id) {
    if (id == "smooth-low") return smooth_low();
    if (id == "smooth-high") return smooth_high();
    if (id == "piecewise-low") return piecewise_low();
    if (id == "piecewise-high") return piecewise_high();
    if (id.starts_with("constant:")) {
        const auto text = id.substr(9);
        double c = 0.0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), c);
        if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
            throw_config("bad constant field '" + std::string(id) + "'");
        }
        return constant(c);
    }
    if (id == "layered:two-phase") {
        return layered("two-phase", [](double y1) { return y1 < 0.5 ? 19.0 : 10.0; }, 10.0, 19.0);
    }
    if (id == "layered:sine") {
        return layered("sine", [](double y1) { return 10.0 + 5.0 * std::sin(2.0 * std::numbers::pi * y1); }, 5.0,
                       15.0);
    }
    throw_config("unknown field id '" + std::string(id) + "'");
}

double CoefficientField::operator()(Point y) const {
    const Point w = periodic_wrap(y);
    switch (kind_) {
        case FieldKind::smooth_low:
            return 10.0 + std::sin(2.0 * std::numbers::pi * bubble(w));
        case FieldKind::smooth_high:
            return 10.0 + 9.0 * std::sin(2.0 * std::numbers::pi * bubble(w));
        case FieldKind::piecewise_low:
            return in_inclusion(w) ? 11.0 : 10.0;
        case FieldKind::piecewise_high:
            return in_inclusion(w) ? 20.0 : 10.0;
        case FieldKind::constant:
            return value_;
        case FieldKind::layered:
            return profile_(w.x);
    }
    return 0.0;
}

double eval_kappa(const CoefficientField& field, Point y) { return field(y); }

double eval_kappa_eps(const CoefficientField& field, double eps, Point x) {
    if (!(eps > 0.0)) throw_argument("eval_kappa_eps: eps must be positive");
    return field({x.x / eps, x.y / eps});
}

InitialData InitialData::parse(std::string_view id) {
    if (id == "smooth") return InitialData(InitialKind::smooth_poly);
    if (id == "rough") return InitialData(InitialKind::rough_indicator);
    if (id == "sine") return InitialData(InitialKind::sine_mode);
    if (id == "zero") return InitialData(InitialKind::zero);
    throw_config("unknown initial data id '" + std::string(id) + "'");
}

std::string InitialData::id() const {
    switch (kind_) {
        case InitialKind::smooth_poly: return "smooth";
        case InitialKind::rough_indicator: return "rough";
        case InitialKind::sine_mode: return "sine";
        case InitialKind::zero: return "zero";
    }
    return "";
}

double InitialData::operator()(Point x) const {
    switch (kind_) {
        case InitialKind::smooth_poly:
            return bubble(x);
        case InitialKind::rough_indicator:
            // open square (0.5,1)^2; its boundary belongs to the zero branch
            return (x.x > 0.5 && x.x < 1.0 && x.y > 0.5 && x.y < 1.0) ? 1.0 : 0.0;
        case InitialKind::sine_mode:
            return std::sin(std::numbers::pi * x.x) * std::sin(std::numbers::pi * x.y);
        case InitialKind::zero:
            return 0.0;
    }
    return 0.0;
}

double eval_initial(const InitialData& data, Point x) { return data(x); }

}  // namespace tfhom
