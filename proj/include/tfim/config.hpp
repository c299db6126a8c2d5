#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tfim/model.hpp"
#include "tfim/pipeline.hpp"
#include "tfim/state_vector.hpp"

namespace tfim {

enum class Mode { evolve_mps, evolve_exact, sweep, calibrate, predict };

std::string_view to_string(Mode mode);
/// "evolve-mps", "evolve-exact", "sweep", "calibrate", "predict".
Mode parse_mode(std::string_view text);

enum class GammaSource { table, calibrated_file, explicit_value };

/**
 * Run configuration. JSON keys:
 *
 *   lx, ly                  grid (required)
 *   j, h, dt, steps         model (defaults -1, 2, 0.25, 20)
 *   delta_theta             initial-state offset (default 0)
 *   delta_thetas            list form, for sweep / calibrate / predict
 *   chi_max                 single bond dimension (evolve-mps)
 *   chi                     list of bond dimensions (sweep / calibrate / predict)
 *   grids                   [[lx, ly], ...] for calibrate (default [[lx, ly]])
 *   exact_cap               max qubits for the dense oracle (default 24)
 *   jobs                    concurrent evolutions (default 1)
 *   seed                    recorded in the manifest; the evolution is
 *                           deterministic and does not draw random numbers
 *   output_path             output directory (alias: output_dir)
 *   gamma_source            "table" | "calibrated-file" | "explicit"
 *   gamma                   exponent for "explicit"
 *   calibration_file        file written by `calibrate`, for "calibrated-file"
 *   constants_file          reference constants (default: shipped data file)
 *   mode                    optional; must agree with the command line
 *
 * A run manifest (an object with a "config" member) is accepted in place of
 * a config and reproduces the original run.
 */
struct RunConfig {
    Mode mode = Mode::evolve_mps;
    GridShape grid;
    ModelParams params;
    std::vector<double> delta_thetas;
    std::vector<int> chis;
    std::vector<GridShape> grids;
    int exact_cap = kDefaultExactCap;
    int jobs = 1;
    std::uint64_t seed = 0;
    std::filesystem::path output_dir;
    bool output_given = false;
    GammaSource gamma_source = GammaSource::table;
    double gamma_value = 0.0;
    std::filesystem::path calibration_file;
    std::filesystem::path constants_file;
};

/// Command-line values that take precedence over the file (0 = keep).
struct ConfigOverrides {
    int jobs = 0;
    int exact_cap = 0;
};

/// Throws ConfigError (or ResourceError when exact_cap is too small for a
/// mode that needs the dense oracle).
RunConfig parse_config(std::string_view json_text, Mode mode,
                       const ConfigOverrides &overrides = {});
RunConfig load_config(const std::filesystem::path &path, Mode mode,
                      const ConfigOverrides &overrides = {});

/// Canonical JSON echo of the config (parse_config(config_to_json(c)) == c).
std::string config_to_json(const RunConfig &config);

} // namespace tfim
