#include "tfim/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tfim/errors.hpp"
#include "tfim/reference_constants.hpp"

namespace tfim {

namespace {

using nlohmann::json;

constexpr std::pair<Mode, std::string_view> kModeNames[] = {
    {Mode::evolve_mps, "evolve-mps"},
    {Mode::evolve_exact, "evolve-exact"},
    {Mode::sweep, "sweep"},
    {Mode::calibrate, "calibrate"},
    {Mode::predict, "predict"},
};

constexpr std::pair<GammaSource, std::string_view> kSourceNames[] = {
    {GammaSource::table, "table"},
    {GammaSource::calibrated_file, "calibrated-file"},
    {GammaSource::explicit_value, "explicit"},
};

GammaSource parse_source(const std::string &text) {
    for (const auto &[source, name] : kSourceNames) {
        if (text == name) {
            return source;
        }
    }
    throw ConfigError("unknown gamma_source '" + text +
                      "' (expected table, calibrated-file or explicit)");
}

std::string_view source_name(GammaSource source) {
    for (const auto &[s, name] : kSourceNames) {
        if (s == source) {
            return name;
        }
    }
    return "table";
}

bool needs_exact(Mode mode) {
    return mode == Mode::evolve_exact || mode == Mode::calibrate;
}

bool needs_gamma(Mode mode) {
    return mode == Mode::evolve_mps || mode == Mode::sweep || mode == Mode::predict;
}

void validate(RunConfig &c) {
    if (c.grid.lx < 2 || c.grid.ly < 2) {
        throw ConfigError("lx and ly must be >= 2");
    }
    if (!(c.params.dt > 0.0)) {
        throw ConfigError("dt must be > 0");
    }
    if (c.params.steps < 0) {
        throw ConfigError("steps must be >= 0");
    }
    for (double dt : c.delta_thetas) {
        ModelParams p = c.params;
        p.delta_theta = dt;
        try {
            (void)initial_theta(p);
        } catch (const DomainError &e) {
            throw ConfigError(e.what());
        }
    }
    if (c.mode != Mode::evolve_exact && c.chis.empty()) {
        throw ConfigError("a bond dimension (chi_max or chi) is required");
    }
    for (int chi : c.chis) {
        if (chi < 1) {
            throw ConfigError("bond dimensions must be positive");
        }
    }
    for (const auto &g : c.grids) {
        if (g.lx < 2 || g.ly < 2) {
            throw ConfigError("grid dimensions must be >= 2");
        }
    }
    if (c.exact_cap < 1 || c.exact_cap > kMaxExactCap) {
        throw ConfigError("exact_cap must lie in [1, " +
                          std::to_string(kMaxExactCap) + "]");
    }
    if (c.jobs < 1) {
        throw ConfigError("jobs must be >= 1");
    }
    if (needs_exact(c.mode)) {
        for (const auto &g : c.grids) {
            require_exact_capacity(g.n(), c.exact_cap);
        }
    }
    if (c.mode == Mode::calibrate) {
        if (c.grids.size() * c.chis.size() < 3) {
            throw ConfigError("calibrate needs at least 3 (grid, chi) points");
        }
    }

    if (c.constants_file.empty()) {
        c.constants_file = default_reference_constants_path();
    }
    if (!needs_gamma(c.mode)) {
        return;
    }
    switch (c.gamma_source) {
    case GammaSource::explicit_value:
        break;
    case GammaSource::calibrated_file:
        if (!std::filesystem::exists(c.calibration_file)) {
            throw ConfigError("calibration_file '" + c.calibration_file.string() +
                              "' does not exist");
        }
        break;
    case GammaSource::table: {
        const ReferenceConstants table = load_reference_constants(c.constants_file);
        for (double dt : c.delta_thetas) {
            if (!table.find(dt)) {
                std::ostringstream msg;
                msg << "no reference constants for delta_theta " << dt
                    << "; use gamma_source explicit or calibrated-file";
                throw ConfigError(msg.str());
            }
        }
        break;
    }
    }
}

RunConfig from_json(const json &doc, Mode mode) {
    RunConfig c;
    c.mode = mode;
    if (doc.contains("mode") && parse_mode(doc.at("mode").get<std::string>()) != mode) {
        throw ConfigError("config mode '" + doc.at("mode").get<std::string>() +
                          "' disagrees with the command line mode '" +
                          std::string(to_string(mode)) + "'");
    }
    c.grid.lx = doc.at("lx").get<int>();
    c.grid.ly = doc.at("ly").get<int>();
    c.params.j_coupling = doc.value("j", -1.0);
    c.params.h_field = doc.value("h", 2.0);
    c.params.dt = doc.value("dt", 0.25);
    c.params.steps = doc.value("steps", 20);
    c.params.delta_theta = doc.value("delta_theta", 0.0);
    if (doc.contains("delta_thetas")) {
        c.delta_thetas = doc.at("delta_thetas").get<std::vector<double>>();
        if (c.delta_thetas.empty()) {
            throw ConfigError("delta_thetas must not be empty");
        }
        c.params.delta_theta = c.delta_thetas.front();
    } else {
        c.delta_thetas = {c.params.delta_theta};
    }
    if (doc.contains("chi")) {
        const json &chi = doc.at("chi");
        c.chis = chi.is_array() ? chi.get<std::vector<int>>()
                                : std::vector<int>{chi.get<int>()};
    }
    if (doc.contains("chi_max")) {
        const int chi_max = doc.at("chi_max").get<int>();
        if (c.chis.empty()) {
            c.chis = {chi_max};
        } else if (mode == Mode::evolve_mps) {
            c.chis = {chi_max};
        }
    }
    if (doc.contains("grids")) {
        for (const auto &g : doc.at("grids")) {
            c.grids.push_back({g.at(0).get<int>(), g.at(1).get<int>()});
        }
    } else {
        c.grids = {c.grid};
    }
    c.exact_cap = doc.value("exact_cap", kDefaultExactCap);
    c.jobs = doc.value("jobs", 1);
    c.seed = doc.value("seed", std::uint64_t{0});
    if (doc.contains("output_path")) {
        c.output_dir = doc.at("output_path").get<std::string>();
        c.output_given = true;
    } else if (doc.contains("output_dir")) {
        c.output_dir = doc.at("output_dir").get<std::string>();
        c.output_given = true;
    } else {
        c.output_dir = ".";
    }
    c.gamma_source = parse_source(doc.value("gamma_source", std::string("table")));
    if (c.gamma_source == GammaSource::explicit_value) {
        if (!doc.contains("gamma")) {
            throw ConfigError("gamma_source explicit requires 'gamma'");
        }
        c.gamma_value = doc.at("gamma").get<double>();
    }
    if (doc.contains("calibration_file")) {
        c.calibration_file = doc.at("calibration_file").get<std::string>();
    }
    if (doc.contains("constants_file")) {
        c.constants_file = doc.at("constants_file").get<std::string>();
    }
    return c;
}

} // namespace

std::string_view to_string(Mode mode) {
    for (const auto &[m, name] : kModeNames) {
        if (m == mode) {
            return name;
        }
    }
    return "evolve-mps";
}

Mode parse_mode(std::string_view text) {
    for (const auto &[mode, name] : kModeNames) {
        if (text == name) {
            return mode;
        }
    }
    throw ConfigError("unknown mode '" + std::string(text) + "'");
}

RunConfig parse_config(std::string_view json_text, Mode mode,
                       const ConfigOverrides &overrides) {
    RunConfig c;
    try {
        json doc = json::parse(json_text);
        if (!doc.is_object()) {
            throw ConfigError("config must be a JSON object");
        }
        if (doc.contains("config") && doc.at("config").is_object()) {
            doc = doc.at("config");
        }
        c = from_json(doc, mode);
    } catch (const json::exception &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (overrides.jobs > 0) {
        c.jobs = overrides.jobs;
    }
    if (overrides.exact_cap > 0) {
        c.exact_cap = overrides.exact_cap;
    }
    validate(c);
    return c;
}

RunConfig load_config(const std::filesystem::path &path, Mode mode,
                      const ConfigOverrides &overrides) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), mode, overrides);
}

std::string config_to_json(const RunConfig &c) {
    nlohmann::ordered_json doc;
    doc["mode"] = std::string(to_string(c.mode));
    doc["lx"] = c.grid.lx;
    doc["ly"] = c.grid.ly;
    doc["j"] = c.params.j_coupling;
    doc["h"] = c.params.h_field;
    doc["dt"] = c.params.dt;
    doc["steps"] = c.params.steps;
    doc["delta_theta"] = c.params.delta_theta;
    doc["delta_thetas"] = c.delta_thetas;
    doc["chi"] = c.chis;
    nlohmann::ordered_json grids = nlohmann::ordered_json::array();
    for (const auto &g : c.grids) {
        grids.push_back({g.lx, g.ly});
    }
    doc["grids"] = grids;
    doc["exact_cap"] = c.exact_cap;
    doc["jobs"] = c.jobs;
    doc["seed"] = c.seed;
    doc["output_path"] = c.output_dir.string();
    doc["gamma_source"] = std::string(source_name(c.gamma_source));
    if (c.gamma_source == GammaSource::explicit_value) {
        doc["gamma"] = c.gamma_value;
    }
    if (!c.calibration_file.empty()) {
        doc["calibration_file"] = c.calibration_file.string();
    }
    doc["constants_file"] = c.constants_file.string();
    return doc.dump(2);
}

} // namespace tfim
