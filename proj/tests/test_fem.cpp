#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tfhom/error.hpp"
#include "tfhom/fem.hpp"
#include "tfhom/fields.hpp"

using namespace tfhom;

namespace {

Coefficient of(const CoefficientField& f) {
    return Coefficient::scalar([f](Point x) { return f(x); });
}

double max_abs_diff(const SparseMatrix& a, const SparseMatrix& b) {
    double m = 0.0;
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a.at(r, c) - b.at(r, c)));
    return m;
}

}  // namespace

TEST_CASE("laplacian on the 2x2 grid") {
    const auto g = make_grid(2, BoundaryKind::dirichlet);
    const auto a = assemble_stiffness(g, Coefficient::constant(Tensor2::isotropic(1.0)), DofMap::dirichlet(g));
    REQUIRE(a.rows() == 1);
    CHECK(a.at(0, 0) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("tensor and scalar coefficients agree") {
    const auto g = make_grid(8, BoundaryKind::dirichlet);
    const auto d = DofMap::dirichlet(g);
    const auto scalar = assemble_stiffness(g, Coefficient::scalar([](Point) { return 3.5; }), d);
    const auto tensor = assemble_stiffness(g, Coefficient::constant(Tensor2::isotropic(3.5)), d);
    const auto unit = assemble_stiffness(g, Coefficient::constant(Tensor2::isotropic(1.0)), d);
    CHECK(max_abs_diff(scalar, tensor) <= 1e-14);
    CHECK(max_abs_diff(scalar, linear_combination(3.5, unit, 0.0, unit)) <= 1e-14);
}

TEST_CASE("diagonal tensor splits into directional parts") {
    const auto g = make_grid(4, BoundaryKind::dirichlet);
    const auto d = DofMap::dirichlet(g);
    const auto both = assemble_stiffness(g, Coefficient::constant(Tensor2::diag(2.0, 5.0)), d);
    const auto x_only = assemble_stiffness(g, Coefficient::constant(Tensor2::diag(1.0, 0.0)), d);
    const auto y_only = assemble_stiffness(g, Coefficient::constant(Tensor2::diag(0.0, 1.0)), d);
    CHECK(max_abs_diff(both, linear_combination(2.0, x_only, 5.0, y_only)) <= 1e-14);
    CHECK(both.asymmetry() <= 1e-15);
}

TEST_CASE("stiffness annihilates constants on the full mesh") {
    const auto g = make_grid(16, BoundaryKind::dirichlet);
    const auto all = DofMap::all_nodes(g);
    std::vector<double> ones(static_cast<std::size_t>(g.node_count()), 1.0);
    const std::vector<Coefficient> coefficients{
        of(CoefficientField::smooth_high()), of(CoefficientField::piecewise_high()),
        Coefficient::tensor([](Point x) { return Tensor2{2.0 + x.x, 0.3, 0.3, 1.0 + x.y}; })};
    for (const auto& c : coefficients) {
        for (double v : matvec(assemble_stiffness(g, c, all), ones)) CHECK(std::abs(v) <= 1e-12);
    }
    const auto p = make_grid(16, BoundaryKind::periodic);
    const auto pm = DofMap::periodic(p);
    std::vector<double> pones(static_cast<std::size_t>(pm.total_dofs()), 1.0);
    for (double v : matvec(assemble_stiffness(p, coefficients[0], pm), pones)) CHECK(std::abs(v) <= 1e-12);
}

TEST_CASE("non-finite coefficient is reported") {
    const auto g = make_grid(4, BoundaryKind::dirichlet);
    try {
        assemble_stiffness(g, Coefficient::scalar([](Point x) { return x.x > 0.5 ? NAN : 1.0; }), DofMap::dirichlet(g));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::numerical);
        CHECK(std::string(e.what()).find("quadrature point") != std::string::npos);
    }
}

TEST_CASE("element mass block") {
    const double h = 0.25;
    const auto m = element_mass_block(h);
    const double pattern[16] = {4, 2, 1, 2, 2, 4, 2, 1, 1, 2, 4, 2, 2, 1, 2, 4};
    for (int k = 0; k < 16; ++k) CHECK(m[static_cast<std::size_t>(k)] == doctest::Approx(h * h / 36.0 * pattern[k]));

    const auto g = make_grid(2, BoundaryKind::dirichlet);
    const auto full = assemble_mass(g, DofMap::all_nodes(g));
    const auto e0 = g.element_nodes(0);
    // corner node 0 belongs to one element only
    CHECK(full.at(e0[0], e0[0]) == doctest::Approx(element_mass_block(0.5)[0]).epsilon(1e-14));
    CHECK(full.at(e0[0], e0[2]) == doctest::Approx(element_mass_block(0.5)[2]).epsilon(1e-14));
}

TEST_CASE("mass matrix totals") {
    const auto g = make_grid(16, BoundaryKind::dirichlet);
    const auto m = assemble_mass(g, DofMap::all_nodes(g));
    std::vector<double> ones(static_cast<std::size_t>(g.node_count()), 1.0);
    const auto rows = matvec(m, ones);
    double total = 0.0;
    for (int k = 0; k < g.node_count(); ++k) {
        total += rows[static_cast<std::size_t>(k)];
        if (!g.on_boundary(k)) CHECK(rows[static_cast<std::size_t>(k)] == doctest::Approx(g.h() * g.h()).epsilon(1e-13));
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));

    const auto load = project_load(g, DofMap::all_nodes(g), [](Point) { return 1.0; });
    for (std::size_t k = 0; k < load.size(); ++k) CHECK(load[k] == doctest::Approx(rows[k]).epsilon(1e-14));
    for (double v : project_load(g, DofMap::dirichlet(g), [](Point) { return 0.0; })) CHECK(v == 0.0);
}

TEST_CASE("load vector against a 4x4 Gauss oracle") {
    const auto g = make_grid(16, BoundaryKind::dirichlet);
    const auto dofs = DofMap::dirichlet(g);
    const auto a = InitialData(InitialKind::smooth_poly);
    const auto f = [&](Point x) { return a(x); };
    const auto load = project_load(g, dofs, f);

    const double xs[4] = {0.0694318442029737, 0.3300094782075719, 0.6699905217924281, 0.9305681557970263};
    const double ws[4] = {0.1739274225687269, 0.3260725774312731, 0.3260725774312731, 0.1739274225687269};
    std::vector<double> oracle(load.size(), 0.0);
    const double h = g.h();
    for (int e = 0; e < g.element_count(); ++e) {
        const auto nodes = g.element_nodes(e);
        const auto o = g.element_origin(e);
        for (int qi = 0; qi < 4; ++qi)
            for (int qj = 0; qj < 4; ++qj) {
                const double s = xs[qi], t = xs[qj];
                const double phi[4] = {(1 - s) * (1 - t), s * (1 - t), s * t, (1 - s) * t};
                const double w = ws[qi] * ws[qj] * h * h * f({o.x + s * h, o.y + t * h});
                for (int k = 0; k < 4; ++k) {
                    const int d = dofs.dof(nodes[static_cast<std::size_t>(k)]);
                    if (d >= 0) oracle[static_cast<std::size_t>(d)] += w * phi[k];
                }
            }
    }
    double worst = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < load.size(); ++k) {
        worst = std::max(worst, std::abs(load[k] - oracle[k]));
        scale = std::max(scale, std::abs(oracle[k]));
    }
    CHECK(worst <= 1e-6 * scale);
}

TEST_CASE("norms of simple fields") {
    const auto g = make_grid(32, BoundaryKind::dirichlet);
    const auto x1 = interpolate(g, [](Point p) { return p.x; });
    const std::vector<double> zero(x1.size(), 0.0);
    const auto n = norms(g, x1, zero);
    CHECK(n.l2_of_diff == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-13));
    const auto sq = norm_squares(g, x1);
    CHECK(sq.h1_semi == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(n.h1_of_diff == doctest::Approx(std::sqrt(1.0 / 3.0 + 1.0)).epsilon(1e-13));

    const auto same = norms(g, x1, x1);
    CHECK(same.l2_of_diff == 0.0);
    CHECK(same.h1_of_diff == 0.0);
    CHECK(same.l2_of_u == doctest::Approx(n.l2_of_u));
    CHECK(same.h1_of_u == doctest::Approx(n.h1_of_u));

    const auto g64 = make_grid(64, BoundaryKind::dirichlet);
    const double pi = std::numbers::pi;
    const auto s = interpolate(g64, [pi](Point p) { return std::sin(pi * p.x) * std::sin(pi * p.y); });
    const std::vector<double> z64(s.size(), 0.0);
    CHECK(std::abs(norms(g64, s, z64).l2_of_diff - 0.5) <= 1e-3);
    CHECK(integrate(g64, s) == doctest::Approx(4.0 / (pi * pi)).epsilon(1e-3));

    CHECK_THROWS_AS(norms(g, x1, std::vector<double>(3)), Error);
}
