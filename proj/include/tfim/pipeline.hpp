#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "tfim/calibration.hpp"
#include "tfim/evolution.hpp"
#include "tfim/reference_constants.hpp"

namespace tfim {

struct GridShape {
    int lx = 0;
    int ly = 0;
    int n() const noexcept { return lx * ly; }
    friend bool operator==(const GridShape &, const GridShape &) = default;
};

/// One evolution to run. chi == 0 requests the dense oracle.
struct SeriesTask {
    GridShape grid;
    double delta_theta = 0.0;
    int chi = 0;
    bool exact() const noexcept { return chi == 0; }
};

struct Series {
    SeriesTask task;
    std::vector<StepRecord> records;
    Index peak_bond = 0;
    double seconds = 0.0;

    std::vector<double> z_tot() const;
    std::vector<double> z2_tot() const;
    std::vector<double> fidelity() const;
};

/**
 * Runs every task, up to `jobs` at a time. Each evolution itself is
 * single-threaded; results come back in task order and do not depend on
 * `jobs`. The first exception thrown by any task is rethrown.
 */
std::vector<Series> run_series(const std::vector<SeriesTask> &tasks,
                               const ModelParams &base, int exact_cap, int jobs);

/// Exact and truncated series for every (grid, delta_theta, chi).
struct CalibrationDataset {
    std::vector<Series> series;

    const Series &exact(const GridShape &grid, double delta_theta) const;
    const Series &mps(const GridShape &grid, double delta_theta, int chi) const;
};

CalibrationDataset collect_calibration_data(const std::vector<GridShape> &grids,
                                            const std::vector<int> &chis,
                                            const std::vector<double> &delta_thetas,
                                            const ModelParams &base, int exact_cap,
                                            int jobs);

struct CalibrationPoint {
    GridShape grid;
    int chi = 0;
    double delta_theta = 0.0;
    double final_fidelity = 1.0;
    GammaSearch search;
};

struct CalibrationResult {
    double delta_theta = 0.0;
    std::vector<CalibrationPoint> points;   // every (grid, chi)
    GammaFit gamma_fit;                     // over non-degenerate points
    std::vector<ErrorPoint> error_points;   // errors of the gamma_fit series
    ErrorModel error_model;
};

/// gamma* for every (grid, chi) at one delta_theta.
std::vector<CalibrationPoint> gamma_star_points(const CalibrationDataset &data,
                                                const std::vector<GridShape> &grids,
                                                const std::vector<int> &chis,
                                                double delta_theta);

/// True when the point carries information about gamma (some truncation).
bool is_informative(const CalibrationPoint &point);

/// Mean/max |z2_raw F^gamma_fit - z2_exact| for one series.
SeriesError rescaled_z2_error(const CalibrationDataset &data, const GridShape &grid,
                              double delta_theta, int chi, double gamma);

/**
 * Full calibration at one delta_theta: gamma* per point, the gamma scaling
 * law over informative points, and the error model of the series rescaled
 * with that law.
 */
CalibrationResult calibrate(const CalibrationDataset &data,
                            const std::vector<GridShape> &grids,
                            const std::vector<int> &chis, double delta_theta,
                            InterceptMode mode = InterceptMode::automatic);

/// {delta_theta, points, a, b, a_err, b_err, K_mean, alpha_mean, K_max,
/// alpha_max, ...} as pretty-printed JSON.
std::string calibration_to_json(const CalibrationResult &result);

/// Reads a file written by calibration_to_json.
TemperatureConstants load_calibration_file(const std::filesystem::path &path);

} // namespace tfim
