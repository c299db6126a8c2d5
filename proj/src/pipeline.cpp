#include "tfim/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tfim/errors.hpp"

namespace tfim {

std::vector<double> Series::z_tot() const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto &r : records) {
        out.push_back(r.z_tot);
    }
    return out;
}

std::vector<double> Series::z2_tot() const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto &r : records) {
        out.push_back(r.z2_tot);
    }
    return out;
}

std::vector<double> Series::fidelity() const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto &r : records) {
        out.push_back(r.f_cum);
    }
    return out;
}

namespace {

Series run_one(const SeriesTask &task, const ModelParams &base, int exact_cap) {
    ModelParams params = base;
    params.delta_theta = task.delta_theta;
    const Grid grid = build_grid(task.grid.lx, task.grid.ly);

    const auto start = std::chrono::steady_clock::now();
    Series out{task, {}, 0, 0.0};
    if (task.exact()) {
        ExactOptions options;
        options.max_qubits = exact_cap;
        // Parallelism is spent across tasks; keep the kernels serial.
        options.backend = Backend::serial;
        out.records = evolve_exact(grid, params, options);
    } else {
        EvolutionResult result = run_evolution(grid, params, task.chi);
        out.records = std::move(result.records);
        for (const auto &r : out.records) {
            out.peak_bond = std::max(out.peak_bond, r.chi_used);
        }
    }
    out.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    return out;
}

double cost_estimate(const SeriesTask &task) {
    if (task.exact()) {
        return std::ldexp(1.0, task.grid.n()) * task.grid.n();
    }
    const double chi = task.chi;
    return chi * chi * chi * task.grid.n() * 16.0;
}

} // namespace

std::vector<Series> run_series(const std::vector<SeriesTask> &tasks,
                               const ModelParams &base, int exact_cap, int jobs) {
    for (const auto &t : tasks) {
        if (t.exact()) {
            require_exact_capacity(t.grid.n(), exact_cap);
        } else if (t.chi < 0) {
            throw InputError("bond dimension must be positive");
        }
    }
    // Largest first for load balance; output order is task order.
    std::vector<std::size_t> order(tasks.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return cost_estimate(tasks[a]) > cost_estimate(tasks[b]);
    });

    std::vector<Series> out(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    const std::int64_t count = static_cast<std::int64_t>(tasks.size());
    const int threads = std::max(1, jobs);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t k = 0; k < count; ++k) {
        const std::size_t idx = order[static_cast<std::size_t>(k)];
        try {
            out[idx] = run_one(tasks[idx], base, exact_cap);
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

const Series &CalibrationDataset::exact(const GridShape &grid,
                                        double delta_theta) const {
    return mps(grid, delta_theta, 0);
}

const Series &CalibrationDataset::mps(const GridShape &grid, double delta_theta,
                                      int chi) const {
    for (const auto &s : series) {
        if (s.task.grid == grid && s.task.chi == chi &&
            std::abs(s.task.delta_theta - delta_theta) < 1e-12) {
            return s;
        }
    }
    std::ostringstream msg;
    msg << "no " << (chi == 0 ? "exact" : "MPS") << " series for " << grid.lx
        << "x" << grid.ly << ", chi " << chi << ", delta_theta " << delta_theta;
    throw InputError(msg.str());
}

CalibrationDataset collect_calibration_data(const std::vector<GridShape> &grids,
                                            const std::vector<int> &chis,
                                            const std::vector<double> &delta_thetas,
                                            const ModelParams &base, int exact_cap,
                                            int jobs) {
    std::vector<SeriesTask> tasks;
    for (const auto &g : grids) {
        for (double dt : delta_thetas) {
            tasks.push_back({g, dt, 0});
            for (int chi : chis) {
                tasks.push_back({g, dt, chi});
            }
        }
    }
    return {run_series(tasks, base, exact_cap, jobs)};
}

std::vector<CalibrationPoint> gamma_star_points(const CalibrationDataset &data,
                                                const std::vector<GridShape> &grids,
                                                const std::vector<int> &chis,
                                                double delta_theta) {
    std::vector<CalibrationPoint> points;
    for (const auto &g : grids) {
        const std::vector<double> exact = data.exact(g, delta_theta).z2_tot();
        for (int chi : chis) {
            const Series &s = data.mps(g, delta_theta, chi);
            const std::vector<double> fid = s.fidelity();
            CalibrationPoint p;
            p.grid = g;
            p.chi = chi;
            p.delta_theta = delta_theta;
            p.final_fidelity = fid.back();
            p.search = find_gamma_star(s.z2_tot(), fid, exact);
            points.push_back(p);
        }
    }
    return points;
}

bool is_informative(const CalibrationPoint &point) {
    return !point.search.degenerate && point.final_fidelity < 1.0;
}

SeriesError rescaled_z2_error(const CalibrationDataset &data, const GridShape &grid,
                              double delta_theta, int chi, double gamma) {
    const Series &s = data.mps(grid, delta_theta, chi);
    const std::vector<double> rescaled = rescale(s.z2_tot(), s.fidelity(), gamma);
    return series_error(rescaled, data.exact(grid, delta_theta).z2_tot());
}

CalibrationResult calibrate(const CalibrationDataset &data,
                            const std::vector<GridShape> &grids,
                            const std::vector<int> &chis, double delta_theta,
                            InterceptMode mode) {
    CalibrationResult result;
    result.delta_theta = delta_theta;
    result.points = gamma_star_points(data, grids, chis, delta_theta);

    std::vector<GammaPoint> gamma_points;
    for (const auto &p : result.points) {
        if (is_informative(p)) {
            gamma_points.push_back({p.grid.n(), p.chi, p.search.gamma});
        }
    }
    result.gamma_fit = fit_gamma_scaling(gamma_points, mode);

    for (const auto &p : result.points) {
        if (!is_informative(p)) {
            continue;
        }
        const double gamma = result.gamma_fit.gamma(p.grid.n(), p.chi);
        const SeriesError e =
            rescaled_z2_error(data, p.grid, delta_theta, p.chi, gamma);
        if (e.mean > 0.0 && e.max > 0.0) {
            result.error_points.push_back({p.grid.n(), p.chi, e.mean, e.max});
        }
    }
    result.error_model = fit_error_model(result.error_points);
    return result;
}

std::string calibration_to_json(const CalibrationResult &r) {
    nlohmann::ordered_json doc;
    doc["delta_theta"] = r.delta_theta;
    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    for (const auto &p : r.points) {
        nlohmann::ordered_json j;
        j["lx"] = p.grid.lx;
        j["ly"] = p.grid.ly;
        j["n"] = p.grid.n();
        j["chi"] = p.chi;
        j["final_fidelity"] = p.final_fidelity;
        j["gamma_star"] = p.search.gamma;
        j["max_abs_error"] = p.search.max_abs_error;
        j["unrescaled_max_abs_error"] = p.search.unrescaled_error;
        j["degenerate"] = p.search.degenerate;
        j["used_in_fit"] = is_informative(p);
        points.push_back(j);
    }
    doc["points"] = points;
    doc["a"] = r.gamma_fit.a;
    doc["b"] = r.gamma_fit.b;
    doc["a_err"] = r.gamma_fit.a_err;
    doc["b_err"] = r.gamma_fit.b_err;
    doc["b_fixed"] = r.gamma_fit.intercept_fixed;
    doc["gamma_r_squared"] = r.gamma_fit.r_squared;
    doc["K_mean"] = r.error_model.mean.k;
    doc["alpha_mean"] = r.error_model.mean.alpha;
    doc["K_mean_err"] = r.error_model.mean.k_err;
    doc["alpha_mean_err"] = r.error_model.mean.alpha_err;
    doc["K_max"] = r.error_model.max.k;
    doc["alpha_max"] = r.error_model.max.alpha;
    doc["K_max_err"] = r.error_model.max.k_err;
    doc["alpha_max_err"] = r.error_model.max.alpha_err;
    nlohmann::ordered_json errs = nlohmann::ordered_json::array();
    for (const auto &e : r.error_points) {
        errs.push_back({{"n", e.n}, {"chi", e.chi}, {"eps_mean", e.eps_mean},
                        {"eps_max", e.eps_max}});
    }
    doc["error_points"] = errs;
    return doc.dump(2) + "\n";
}

TemperatureConstants load_calibration_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open calibration file " + path.string());
    }
    try {
        const nlohmann::json doc = nlohmann::json::parse(in);
        TemperatureConstants t;
        t.label = "calibrated";
        t.delta_theta = doc.at("delta_theta").get<double>();
        t.gamma.a = doc.at("a").get<double>();
        t.gamma.b = doc.at("b").get<double>();
        t.gamma.a_err = doc.value("a_err", 0.0);
        t.gamma.b_err = doc.value("b_err", 0.0);
        t.gamma.intercept_fixed = doc.value("b_fixed", false);
        t.error.mean.k = doc.at("K_mean").get<double>();
        t.error.mean.alpha = doc.at("alpha_mean").get<double>();
        t.error.max.k = doc.at("K_max").get<double>();
        t.error.max.alpha = doc.at("alpha_max").get<double>();
        return t;
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("malformed calibration file " + path.string() + ": " +
                          e.what());
    }
}

} // namespace tfim
