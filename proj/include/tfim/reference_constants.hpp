#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tfim/calibration.hpp"

namespace tfim {

/// Scaling-law constants for one initial-state offset.
struct TemperatureConstants {
    std::string label;
    double delta_theta = 0.0;
    GammaFit gamma;
    ErrorModel error;
};

struct ReferenceConstants {
    std::vector<TemperatureConstants> temperatures;

    /// Entry whose delta_theta matches within `tol`, if any.
    std::optional<TemperatureConstants> find(double delta_theta,
                                             double tol = 1e-9) const;
};

/// data/reference_constants.json in the source tree.
std::filesystem::path default_reference_constants_path();

/// Throws ConfigError if the file is missing or malformed.
ReferenceConstants load_reference_constants(const std::filesystem::path &path);

} // namespace tfim
