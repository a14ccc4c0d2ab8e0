#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "tfhom/cell.hpp"
#include "tfhom/error.hpp"
#include "tfhom/tfrac.hpp"

using namespace tfhom;

namespace {

double l2(const TimeFractionalRun& run, int k) { return std::sqrt(norm_squares(run.grid, run.at(k)).l2); }

}  // namespace

TEST_CASE("L1 weights") {
    const auto w = l1_weights(0.9, 100, 0.01);
    CHECK(w.b.size() == 101u);
    CHECK(w.b[0] == 1.0);
    CHECK(w.b[1] == doctest::Approx(0.0717734625362931642).epsilon(1e-14));
    CHECK(w.gamma_factor == doctest::Approx(0.0150778935880464672).epsilon(1e-13));
    CHECK(l1_weights(0.5, 4, 0.0025).gamma_factor == doctest::Approx(0.0443113462726379007).epsilon(1e-13));
    for (std::size_t j = 1; j < w.b.size(); ++j) {
        CHECK(w.b[j] > 0.0);
        CHECK(w.b[j] < w.b[j - 1]);
    }
}

TEST_CASE("L1 weights telescope") {
    const int n = 1000;
    for (double alpha : {0.1, 0.5, 0.9, 0.99}) {
        const auto w = l1_weights(alpha, n, 1.0 / n);
        double diff_sum = 0.0, sum = 0.0;
        for (int j = 0; j < n; ++j) diff_sum += w.b[static_cast<std::size_t>(j)] - w.b[static_cast<std::size_t>(j) + 1];
        for (double b : w.b) sum += b;
        CAPTURE(alpha);
        CHECK(std::abs(diff_sum + w.b[n] - 1.0) <= 1e-12);
        CHECK(std::abs(sum - std::pow(n + 1.0, 1.0 - alpha)) <= 1e-12 * std::pow(n + 1.0, 1.0 - alpha));
    }
}

TEST_CASE("L1 weights reject bad parameters") {
    CHECK_THROWS_AS(l1_weights(0.0, 10, 0.1), Error);
    CHECK_THROWS_AS(l1_weights(1.0, 10, 0.1), Error);
    CHECK_THROWS_AS(l1_weights(0.5, 0, 0.1), Error);
    CHECK_THROWS_AS(l1_weights(0.5, 10, 0.0), Error);
}

TEST_CASE("first step returns the initial load with identity mass") {
    const auto g = make_grid(4, BoundaryKind::dirichlet);
    const auto dofs = DofMap::dirichlet(g);
    const int n = dofs.total_dofs();
    const auto zero = SparseMatrix::from_triplets(n, n, {});
    AssembledSystem sys{zero, SparseMatrix::identity(n), dofs};
    std::vector<double> load(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) load[static_cast<std::size_t>(i)] = 0.1 * (i + 1);
    L1Scheme scheme(sys, l1_weights(0.9, 5, 0.01), load, {.tolerance = 1e-14});
    std::vector<std::vector<double>> history;
    const auto u1 = scheme.step(history);
    for (int i = 0; i < n; ++i) CHECK(u1[static_cast<std::size_t>(i)] == doctest::Approx(load[static_cast<std::size_t>(i)]));
    // with A = 0 the solution stays put
    history.push_back(u1);
    const auto u2 = scheme.step(history);
    for (int i = 0; i < n; ++i) CHECK(u2[static_cast<std::size_t>(i)] == doctest::Approx(load[static_cast<std::size_t>(i)]));
    CHECK_THROWS_AS(L1Scheme(sys, l1_weights(0.9, 5, 0.01), std::vector<double>(2)), Error);
}

TEST_CASE("zero data gives a zero run") {
    const auto run = run_homogenized(Tensor2::isotropic(1.0), 0.9, 8, 0.1, 1.0, InitialData(InitialKind::zero));
    CHECK(run.steps == 10);
    CHECK(run.history.size() == 11u);
    for (const auto& u : run.history)
        for (double v : u) CHECK(v == 0.0);
}

TEST_CASE("history bookkeeping") {
    const auto run = run_homogenized(Tensor2::isotropic(1.0), 0.9, 8, 0.05, 1.0, InitialData(InitialKind::sine_mode));
    REQUIRE(run.history_terms.size() == 20u);
    for (int k = 0; k < 20; ++k) CHECK(run.history_terms[static_cast<std::size_t>(k)] == k);
    CHECK(run.reports.size() == 20u);
    for (const auto& r : run.reports) CHECK(r.converged);
    CHECK(run.time(20) == doctest::Approx(1.0));
    CHECK(run.step_for_time(0.5) == 10);
    CHECK(run.step_for_time(0.0) == 0);
    CHECK_THROWS_AS(run.step_for_time(0.123), Error);
    CHECK_THROWS_AS(run.step_for_time(1.5), Error);
    CHECK_THROWS_AS(run.at(21), Error);
    CHECK_THROWS_AS(run.at(-1), Error);
}

TEST_CASE("step count") {
    CHECK(step_count(0.01, 1.0) == 100);
    CHECK(step_count(1.0 / 400, 1.0) == 400);
    CHECK(step_count(0.1, 0.3) == 3);
    CHECK_THROWS_AS(step_count(0.3, 1.0), Error);
    CHECK_THROWS_AS(step_count(0.0, 1.0), Error);
    CHECK_THROWS_AS(step_count(0.1, -1.0), Error);
}

TEST_CASE("norm decays and stays nonnegative for nonnegative data") {
    for (const char* data : {"smooth", "rough", "sine"}) {
        const auto a = InitialData::parse(data);
        const auto run = run_fine(CoefficientField::smooth_high(), 0.25, 0.9, 32, 0.02, 1.0, a);
        double amax = 0.0;
        for (double v : run.at(0)) amax = std::max(amax, v);
        const std::string data_name = data;
        CAPTURE(data_name);
        for (int k = 1; k <= run.steps; ++k) {
            CHECK(l2(run, k) < l2(run, k - 1));
            const double lo = *std::min_element(run.at(k).begin(), run.at(k).end());
            CHECK(lo >= -1e-8 * amax);
        }
    }
}

TEST_CASE("unit-period fine run is the pointwise-coefficient run") {
    const auto field = CoefficientField::smooth_low();
    const auto a = InitialData(InitialKind::smooth_poly);
    const RunOptions opts{.cg = {.tolerance = 1e-12}};
    const auto fine = run_fine(field, 1.0, 0.9, 16, 0.1, 1.0, a, opts);
    const auto direct =
        run_time_fractional(16, Coefficient::scalar([&](Point x) { return field(x); }), "direct", 0.9, 0.1, 1.0, a, opts);
    for (int k = 0; k <= fine.steps; ++k) CHECK(fine.at(k) == direct.at(k));
}

TEST_CASE("constant-field homogenized run equals the scalar run") {
    const double c = 4.0;
    const auto cell = solve_cell(CoefficientField::constant(c), 16);
    const auto a = InitialData(InitialKind::smooth_poly);
    const RunOptions opts{.cg = {.tolerance = 1e-12}};
    const auto hom = run_homogenized(cell.kappa_star, 0.7, 16, 0.1, 1.0, a, opts);
    const auto fine = run_fine(CoefficientField::constant(c), 0.5, 0.7, 16, 0.1, 1.0, a, opts);
    double worst = 0.0;
    for (int k = 0; k <= hom.steps; ++k)
        for (std::size_t i = 0; i < hom.at(k).size(); ++i) worst = std::max(worst, std::abs(hom.at(k)[i] - fine.at(k)[i]));
    CHECK(worst <= 1e-10);
}

TEST_CASE("warm start does not change the answer") {
    const auto a = InitialData(InitialKind::smooth_poly);
    const auto warm = run_homogenized(Tensor2::isotropic(2.0), 0.9, 16, 0.1, 1.0, a, {.cg = {.tolerance = 1e-12}});
    const auto cold = run_homogenized(Tensor2::isotropic(2.0), 0.9, 16, 0.1, 1.0, a,
                                      {.cg = {.tolerance = 1e-12}, .warm_start = false});
    for (int k = 0; k <= warm.steps; ++k)
        for (std::size_t i = 0; i < warm.at(k).size(); ++i) CHECK(warm.at(k)[i] == doctest::Approx(cold.at(k)[i]).scale(1e-6));
}

TEST_CASE("non-converging step is reported") {
    const auto a = InitialData(InitialKind::smooth_poly);
    try {
        run_homogenized(Tensor2::isotropic(1.0), 0.9, 32, 0.1, 1.0, a, {.cg = {.tolerance = 1e-14, .max_iterations = 1}});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::numerical);
        CHECK(std::string(e.what()).find("L1 step 1") != std::string::npos);
    }
}
