#include "tfhom/tfhom.h"

#include <cstring>
#include <iostream>
#include <memory>
#include <new>
#include <string>

#include "tfhom/analysis.hpp"
#include "tfhom/cell.hpp"
#include "tfhom/corrector.hpp"
#include "tfhom/error.hpp"
#include "tfhom/experiment.hpp"
#include "tfhom/tfrac.hpp"

struct tfh_cell {
    tfhom::CellSolution solution;
};

struct tfh_run {
    tfhom::TimeFractionalRun run;
};

namespace {

thread_local std::string last_error;

tfh_status fail(tfh_status status, const std::string& message) {
    last_error = message;
    return status;
}

template <class F>
tfh_status guarded(F&& body) {
    try {
        body();
        last_error.clear();
        return TFH_OK;
    } catch (const tfhom::Error& e) {
        switch (e.kind()) {
            case tfhom::ErrorKind::config: return fail(TFH_ERR_CONFIG, e.what());
            case tfhom::ErrorKind::numerical: return fail(TFH_ERR_NUMERICAL, e.what());
            case tfhom::ErrorKind::argument: return fail(TFH_ERR_ARGUMENT, e.what());
            case tfhom::ErrorKind::io: return fail(TFH_ERR_IO, e.what());
        }
        return fail(TFH_ERR_INTERNAL, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(TFH_ERR_CONFIG, std::string("invalid JSON: ") + e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return fail(TFH_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(TFH_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(TFH_ERR_INTERNAL, e.what());
    }
}

#define TFH_REQUIRE(cond, msg) \
    do {                       \
        if (!(cond)) return fail(TFH_ERR_ARGUMENT, msg); \
    } while (0)

}  // namespace

extern "C" {

const char* tfh_version(void) { return tfhom::toolkit_version; }

const char* tfh_last_error(void) { return last_error.c_str(); }

int tfh_exit_code(tfh_status status) {
    switch (status) {
        case TFH_OK: return 0;
        case TFH_ERR_CONFIG:
        case TFH_ERR_ARGUMENT:
        case TFH_ERR_IO: return 1;
        default: return 2;
    }
}

tfh_status tfh_command_run(const char* command, const char* config_json) {
    TFH_REQUIRE(command && config_json, "tfh_command_run: null argument");
    return guarded([&] {
        const auto config = tfhom::config_from_json(nlohmann::json::parse(config_json));
        tfhom::run_command(command, config, std::cout);
        std::cout.flush();
    });
}

tfh_status tfh_cell_solve(const char* field_id, int n_cell, tfh_cell** out) {
    TFH_REQUIRE(field_id && out, "tfh_cell_solve: null argument");
    *out = nullptr;
    return guarded([&] {
        auto cell = std::make_unique<tfh_cell>();
        cell->solution = tfhom::solve_cell(tfhom::CoefficientField::parse(field_id), n_cell);
        *out = cell.release();
    });
}

void tfh_cell_free(tfh_cell* cell) { delete cell; }

tfh_status tfh_cell_kappa_star(const tfh_cell* cell, double kappa_star[4]) {
    TFH_REQUIRE(cell && kappa_star, "tfh_cell_kappa_star: null argument");
    const auto& k = cell->solution.kappa_star;
    kappa_star[0] = k.xx;
    kappa_star[1] = k.xy;
    kappa_star[2] = k.yx;
    kappa_star[3] = k.yy;
    return TFH_OK;
}

tfh_status tfh_cell_chi(const tfh_cell* cell, int j, double y1, double y2, double* value) {
    TFH_REQUIRE(cell && value, "tfh_cell_chi: null argument");
    TFH_REQUIRE(j == 1 || j == 2, "tfh_cell_chi: j must be 1 or 2");
    return guarded([&] { *value = cell->solution.chi_at(j - 1, {y1, y2}); });
}

tfh_status tfh_run_fine(const char* field_id, double eps, double alpha, int grid_n, double dt, double T,
                        const char* initial_id, tfh_run** out) {
    TFH_REQUIRE(field_id && initial_id && out, "tfh_run_fine: null argument");
    *out = nullptr;
    return guarded([&] {
        auto run = std::make_unique<tfh_run>();
        run->run = tfhom::run_fine(tfhom::CoefficientField::parse(field_id), eps, alpha, grid_n, dt, T,
                                   tfhom::InitialData::parse(initial_id));
        *out = run.release();
    });
}

tfh_status tfh_run_homogenized(const double kappa_star[4], double alpha, int grid_n, double dt, double T,
                               const char* initial_id, tfh_run** out) {
    TFH_REQUIRE(kappa_star && initial_id && out, "tfh_run_homogenized: null argument");
    *out = nullptr;
    return guarded([&] {
        auto run = std::make_unique<tfh_run>();
        const tfhom::Tensor2 k{kappa_star[0], kappa_star[1], kappa_star[2], kappa_star[3]};
        run->run = tfhom::run_homogenized(k, alpha, grid_n, dt, T, tfhom::InitialData::parse(initial_id));
        *out = run.release();
    });
}

void tfh_run_free(tfh_run* run) { delete run; }

int tfh_run_steps(const tfh_run* run) { return run ? run->run.steps : -1; }

size_t tfh_run_node_count(const tfh_run* run) {
    return run ? static_cast<size_t>(run->run.grid.node_count()) : 0;
}

tfh_status tfh_run_snapshot(const tfh_run* run, int step, double* buffer, size_t length) {
    TFH_REQUIRE(run && buffer, "tfh_run_snapshot: null argument");
    return guarded([&] {
        const auto& u = run->run.at(step);
        if (length < u.size()) tfhom::throw_argument("tfh_run_snapshot: buffer too small");
        std::memcpy(buffer, u.data(), u.size() * sizeof(double));
    });
}

tfh_status tfh_corrector_build(const tfh_run* homogenized, const tfh_cell* cell, double eps, double theta, int step,
                               double* buffer, size_t length) {
    TFH_REQUIRE(homogenized && cell && buffer, "tfh_corrector_build: null argument");
    return guarded([&] {
        const auto f = theta > 0.0 ? tfhom::build_modified_u1(homogenized->run, cell->solution, eps, theta, step)
                                   : tfhom::build_U1(homogenized->run, cell->solution, eps, step);
        if (length < f.values.size()) tfhom::throw_argument("tfh_corrector_build: buffer too small");
        std::memcpy(buffer, f.values.data(), f.values.size() * sizeof(double));
    });
}

tfh_status tfh_compare(const tfh_run* fine, int step, const double* approx, size_t length, double out[5]) {
    TFH_REQUIRE(fine && approx && out, "tfh_compare: null argument");
    return guarded([&] {
        const auto& u = fine->run.at(step);
        if (length != u.size()) tfhom::throw_argument("tfh_compare: approximation has wrong length");
        const auto row = tfhom::compare_fields(fine->run.grid, fine->run.time(step), u, {approx, length});
        out[0] = row.t;
        out[1] = row.abs_l2;
        out[2] = row.rel_l2;
        out[3] = row.abs_h1;
        out[4] = row.rel_h1;
    });
}

tfh_status tfh_estimate_rate(const double* eps, const double* errors, size_t count, double* rate) {
    TFH_REQUIRE(eps && errors && rate, "tfh_estimate_rate: null argument");
    return guarded([&] {
        std::vector<std::pair<double, double>> pts;
        for (size_t i = 0; i < count; ++i) pts.emplace_back(eps[i], errors[i]);
        *rate = tfhom::estimate_rate(pts).rate;
    });
}

tfh_status tfh_mittag_leffler(double alpha, double z, double* value) {
    TFH_REQUIRE(value, "tfh_mittag_leffler: null argument");
    return guarded([&] { *value = tfhom::mittag_leffler(alpha, z); });
}

tfh_status tfh_l1_weights(double alpha, int steps, double dt, double* b, size_t length, double* gamma_factor) {
    TFH_REQUIRE(b && gamma_factor, "tfh_l1_weights: null argument");
    return guarded([&] {
        const auto w = tfhom::l1_weights(alpha, steps, dt);
        if (length < w.b.size()) tfhom::throw_argument("tfh_l1_weights: buffer too small");
        std::memcpy(b, w.b.data(), w.b.size() * sizeof(double));
        *gamma_factor = w.gamma_factor;
    });
}

}  // extern "C"
