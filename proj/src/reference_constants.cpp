#include "tfim/reference_constants.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "tfim/errors.hpp"

namespace tfim {

std::optional<TemperatureConstants>
ReferenceConstants::find(double delta_theta, double tol) const {
    for (const auto &t : temperatures) {
        if (std::abs(t.delta_theta - delta_theta) <= tol) {
            return t;
        }
    }
    return std::nullopt;
}

std::filesystem::path default_reference_constants_path() {
    return std::filesystem::path(TFIM_DEFAULT_DATA_DIR) / "reference_constants.json";
}

ReferenceConstants load_reference_constants(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open reference constants file " + path.string());
    }
    ReferenceConstants out;
    try {
        const nlohmann::json doc = nlohmann::json::parse(in);
        for (const auto &entry : doc.at("temperatures")) {
            TemperatureConstants t;
            t.label = entry.at("label").get<std::string>();
            t.delta_theta = entry.at("delta_theta").get<double>();

            const auto &g = entry.at("gamma");
            t.gamma.a = g.at("a").get<double>();
            t.gamma.a_err = g.at("a_err").get<double>();
            t.gamma.b = g.at("b").get<double>();
            t.gamma.b_err = g.at("b_err").get<double>();
            t.gamma.intercept_fixed = g.value("b_fixed", false);

            auto law = [](const nlohmann::json &j) {
                PowerLaw p;
                p.k = j.at("K").get<double>();
                p.k_err = j.at("K_err").get<double>();
                p.alpha = j.at("alpha").get<double>();
                p.alpha_err = j.at("alpha_err").get<double>();
                return p;
            };
            t.error.mean = law(entry.at("error_mean"));
            t.error.max = law(entry.at("error_max"));
            out.temperatures.push_back(std::move(t));
        }
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("malformed reference constants file " + path.string() +
                          ": " + e.what());
    }
    return out;
}

} // namespace tfim
