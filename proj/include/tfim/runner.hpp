#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tfim/config.hpp"
#include "tfim/observables.hpp"

namespace tfim {

inline constexpr const char *kVersion = "0.1.0";

/// Rescaling exponent and predicted errors attached to one output series.
struct SeriesAnnotation {
    double gamma = 0.0;
    double eps_mean = 0.0;
    double eps_max = 0.0;
};

/// Header line of every series CSV (without the trailing newline).
std::string series_csv_header();

/**
 * One row per record: raw observables, z_tot * F and z2 * F^gamma, and the
 * annotation. Numbers use 17 significant digits, lines end in '\n'.
 */
std::string series_csv(const std::vector<StepRecord> &records,
                       const SeriesAnnotation &annotation);

/// tfim_{lx}x{ly}_chi{chi}_dtheta{x.xxxxxx}.csv, or ..._exact_... for chi 0.
std::string series_file_name(int lx, int ly, int chi, double delta_theta);
std::string calibration_file_name(double delta_theta);

/**
 * gamma and the error prediction for (n, chi) according to the configured
 * source. Predictions are NaN when the source carries no error model for
 * this delta_theta (explicit gamma with an unlisted delta_theta).
 */
SeriesAnnotation annotate(const RunConfig &config, double delta_theta, int n,
                          int chi);

struct RunReport {
    std::vector<std::filesystem::path> outputs; // files written, in order
};

/**
 * Executes one CLI mode. Progress and the predict table go to `out`.
 * Throws ConfigError, ResourceError, or InputError.
 */
RunReport run(const RunConfig &config, std::ostream &out);

} // namespace tfim
