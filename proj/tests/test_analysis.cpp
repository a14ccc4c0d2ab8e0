#include <doctest.h>

#include <cmath>
#include <numbers>
#include <utility>

#include "tfhom/analysis.hpp"
#include "tfhom/error.hpp"

using namespace tfhom;

namespace {

struct MlReference {
    double alpha;
    double z;
    double value;
};

// high-precision series (and closed form erfc for alpha = 1/2)
const MlReference ml_references[] = {
    {0.9, -0.5, 0.60340549869586096762},    {0.9, -1.0, 0.37606602142464188118},
    {0.9, -2.5, 0.11469986754557785185},    {0.9, -5.0, 0.034431324804098423905},
    {0.9, -7.5, 0.018662932471857279635},   {0.9, -10.0, 0.012820606051102102705},
    {0.9, -20.0, 0.0057495078161091138828}, {0.9, -50.0, 0.0021753530768569765492},
    {0.5, -0.5, 0.61569034419292587487},    {0.5, -1.0, 0.42758357615580700441},
    {0.5, -5.0, 0.11070463773306862637},    {0.5, -10.0, 0.056140992743822585858},
    {0.5, -20.0, 0.028174348741051319319},  {0.5, -50.0, 0.0112815362653237725},
    {0.999, -0.5, 0.60648529133691131558},  {0.999, -1.0, 0.36794468034194146967},
    {0.999, -2.5, 0.082430485862076599598}, {0.999, -5.0, 0.0070439569266840405896},
    {0.999, -10.0, 0.00017584834590871150439}, {0.999, -50.0, 0.000020862972463840575241},
    {0.3, -0.5, 0.63264900594359902138},    {0.3, -1.0, 0.45659440832969066901},
    {0.3, -2.5, 0.24498312379478694282},    {0.3, -5.0, 0.13708086902027063758},
    {0.3, -10.0, 0.072649729072728295972},  {0.3, -50.0, 0.015228201501770905652},
};

}  // namespace

TEST_CASE("synthetic rates") {
    std::vector<std::pair<double, double>> linear, root;
    for (double eps : {0.125, 0.0625, 0.03125}) {
        linear.emplace_back(eps, 3.0 * eps);
        root.emplace_back(eps, 0.2 * std::sqrt(eps));
    }
    CHECK(std::abs(estimate_rate(linear).rate - 1.0) <= 1e-12);
    CHECK(std::abs(estimate_rate(root).rate - 0.5) <= 1e-12);
    CHECK(estimate_rate(linear).eps_values.size() == 3u);
}

TEST_CASE("rates from published error tables") {
    // relative H1 errors at t = 0.1, 0.5, 1 for eps = 1/8, 1/16, 1/32
    const double smooth_h1[3][3] = {{2.0673e-4, 1.0270e-4, 5.4412e-5},
                                    {2.0794e-4, 1.0300e-4, 5.4515e-5},
                                    {2.0809e-4, 1.0303e-4, 5.4527e-5}};
    const double smooth_rates[3] = {0.9623, 0.9657, 0.9661};
    const double rough_h1[3][3] = {{8.3829e-4, 4.3744e-4, 2.2390e-4},
                                   {8.6128e-4, 4.5053e-4, 2.3074e-4},
                                   {8.6391e-4, 4.5204e-4, 2.3153e-4}};
    const double rough_rates[3] = {0.9523, 0.9502, 0.9499};
    for (int row = 0; row < 3; ++row) {
        const std::pair<double, double> s[] = {
            {0.125, smooth_h1[row][0]}, {0.0625, smooth_h1[row][1]}, {0.03125, smooth_h1[row][2]}};
        const std::pair<double, double> r[] = {
            {0.125, rough_h1[row][0]}, {0.0625, rough_h1[row][1]}, {0.03125, rough_h1[row][2]}};
        CHECK(std::abs(estimate_rate(s).rate - smooth_rates[row]) <= 2e-3);
        CHECK(std::abs(estimate_rate(r).rate - rough_rates[row]) <= 2e-3);
    }
    // the L2 column of the same tables decays about twice as fast
    const std::pair<double, double> l2[] = {{0.125, 1.3488e-5}, {0.0625, 3.3162e-6}, {0.03125, 9.1322e-7}};
    CHECK(estimate_rate(l2).rate == doctest::Approx(1.9423).epsilon(1e-3));
}

TEST_CASE("rate is invariant under scaling") {
    std::vector<std::pair<double, double>> pts{{0.125, 2.0e-3}, {0.0625, 1.1e-3}, {0.03125, 4.0e-4}};
    const double base = estimate_rate(pts).rate;
    for (auto& p : pts) p.second *= 1234.5;
    CHECK(estimate_rate(pts).rate == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("rate input validation") {
    const std::pair<double, double> one[] = {{0.125, 1.0}};
    CHECK_THROWS_AS(estimate_rate(one), Error);
    const std::pair<double, double> neg[] = {{0.125, 1.0}, {0.0625, -1.0}};
    CHECK_THROWS_AS(estimate_rate(neg), Error);
    const std::pair<double, double> zero_eps[] = {{0.0, 1.0}, {0.0625, 1.0}};
    CHECK_THROWS_AS(estimate_rate(zero_eps), Error);
    const std::pair<double, double> same[] = {{0.125, 1.0}, {0.125, 2.0}};
    CHECK_THROWS_AS(estimate_rate(same), Error);
}

TEST_CASE("Mittag-Leffler identities") {
    for (double a : {0.1, 0.5, 0.9, 1.0}) CHECK(mittag_leffler(a, 0.0) == 1.0);
    CHECK(mittag_leffler(1.0, -1.0) == doctest::Approx(0.36787944117144233).epsilon(1e-15));
    CHECK(mittag_leffler(1.0, -30.0) == doctest::Approx(std::exp(-30.0)).epsilon(1e-15));
    CHECK_THROWS_AS(mittag_leffler(0.0, -1.0), Error);
    CHECK_THROWS_AS(mittag_leffler(1.2, -1.0), Error);
    CHECK_THROWS_AS(mittag_leffler(0.9, 0.5), Error);
    CHECK_THROWS_AS(mittag_leffler(0.9, -51.0), Error);
}

TEST_CASE("Mittag-Leffler reference values") {
    for (const auto& r : ml_references) {
        CAPTURE(r.alpha);
        CAPTURE(r.z);
        CHECK(std::abs(mittag_leffler(r.alpha, r.z) - r.value) <= 1e-10 * r.value);
    }
}

TEST_CASE("series and integral routes agree on the series window") {
    for (double a : {0.6, 0.75, 0.9, 0.95}) {
        for (double z = -0.25; z >= -5.0; z -= 0.25) {
            if (std::pow(-z, 1.0 / a) > 8.0) continue;
            CAPTURE(a);
            CAPTURE(z);
            const double s = mittag_leffler_series(a, z);
            const double i = mittag_leffler_integral(a, z);
            CHECK(std::abs(s - i) <= 1e-9 * std::abs(i));
        }
    }
}

TEST_CASE("Mittag-Leffler is completely monotone on the negative axis") {
    for (double a : {0.3, 0.7, 0.9}) {
        double previous = 1.0;
        for (double z = -0.5; z >= -50.0; z -= 0.5) {
            const double v = mittag_leffler(a, z);
            CHECK(v > 0.0);
            CHECK(v < previous);
            previous = v;
        }
    }
}

TEST_CASE("backward Euler reference") {
    const auto g = make_grid(64, BoundaryKind::dirichlet);
    const auto dofs = DofMap::dirichlet(g);
    const auto sys = assemble_system(g, Coefficient::constant(Tensor2::isotropic(1.0)), dofs);

    const std::vector<double> zero(static_cast<std::size_t>(g.node_count()), 0.0);
    const auto z = backward_euler_reference(g, sys, 0.1, 1.0, zero);
    for (const auto& u : z.history)
        for (double v : u) CHECK(v == 0.0);

    const double pi = std::numbers::pi;
    const auto a = interpolate(g, [pi](Point p) { return std::sin(pi * p.x) * std::sin(pi * p.y); });
    const double t_end = 0.1;
    const auto run = backward_euler_reference(g, sys, 1e-3, t_end, a, {.tolerance = 1e-12});
    const int centre = g.node_index(32, 32);
    const double amp = run.at(run.steps)[static_cast<std::size_t>(centre)];
    CHECK(amp == doctest::Approx(std::exp(-2.0 * pi * pi * t_end)).epsilon(1e-2));
    CHECK(run.steps == 100);
}

TEST_CASE("backward Euler with identity mass and no stiffness is stationary") {
    const auto g = make_grid(4, BoundaryKind::dirichlet);
    const auto dofs = DofMap::dirichlet(g);
    const int n = dofs.total_dofs();
    AssembledSystem sys{SparseMatrix::from_triplets(n, n, {}), SparseMatrix::identity(n), dofs};
    const auto a = interpolate(g, [](Point p) { return p.x * (1 - p.x) * p.y * (1 - p.y); });
    const auto run = backward_euler_reference(g, sys, 0.5, 0.5, a);
    REQUIRE(run.steps == 1);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(run.at(1)[i] == doctest::Approx(a[i]));
}

TEST_CASE("comparing a run with itself") {
    const auto run = run_homogenized(Tensor2::isotropic(1.0), 0.9, 16, 0.1, 1.0, InitialData(InitialKind::smooth_poly));
    std::vector<CorrectorField> same;
    for (double t : default_report_times) {
        const int k = run.step_for_time(t);
        same.push_back({run.at(k), k, run.time(k)});
    }
    const auto report = compare_runs(run, same);
    REQUIRE(report.rows.size() == 3u);
    for (const auto& r : report.rows) {
        CHECK(r.abs_l2 == 0.0);
        CHECK(r.rel_l2 == 0.0);
        CHECK(r.abs_h1 == 0.0);
        CHECK(r.rel_h1 == 0.0);
    }
    CHECK(report.rows[1].t == doctest::Approx(0.5));

    const std::vector<double> zeros(run.at(0).size(), 0.0);
    const auto zr = compare_fields(run.grid, 0.0, zeros, zeros);
    CHECK(zr.rel_l2 == 0.0);
    CHECK(zr.rel_h1 == 0.0);

    std::vector<CorrectorField> off{{run.at(1), 1, 0.123}};
    CHECK_THROWS_AS(compare_runs(run, off), Error);
}
