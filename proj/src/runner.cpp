#include "tfim/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include <nlohmann/json.hpp>

#include "tfim/errors.hpp"

namespace tfim {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw ConfigError("write failed for " + path.string());
    }
}

void ensure_directory(const std::filesystem::path &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw ConfigError("cannot create output directory " + dir.string() + ": " +
                          ec.message());
    }
}

TemperatureConstants constants_for(const RunConfig &config, double delta_theta) {
    if (config.gamma_source == GammaSource::calibrated_file) {
        return load_calibration_file(config.calibration_file);
    }
    const auto table = load_reference_constants(config.constants_file);
    if (auto entry = table.find(delta_theta)) {
        return *entry;
    }
    throw ConfigError("no reference constants for this delta_theta");
}

ordered_json series_entry(const Series &s, const std::string &file) {
    ordered_json j;
    j["lx"] = s.task.grid.lx;
    j["ly"] = s.task.grid.ly;
    j["chi"] = s.task.chi;
    j["delta_theta"] = s.task.delta_theta;
    j["file"] = file;
    j["peak_bond"] = s.peak_bond;
    j["final_fidelity"] = s.records.empty() ? 1.0 : s.records.back().f_cum;
    j["seconds"] = s.seconds;
    return j;
}

struct Writer {
    const RunConfig &config;
    std::ostream &out;
    RunReport report;
    ordered_json runs = ordered_json::array();

    void series(const Series &s, const SeriesAnnotation &annotation) {
        const std::string name = series_file_name(
            s.task.grid.lx, s.task.grid.ly, s.task.chi, s.task.delta_theta);
        const auto path = config.output_dir / name;
        write_text(path, series_csv(s.records, annotation));
        report.outputs.push_back(path);
        runs.push_back(series_entry(s, name));
        out << "wrote " << path.string() << "\n";
    }

    void file(const std::string &name, const std::string &text) {
        const auto path = config.output_dir / name;
        write_text(path, text);
        report.outputs.push_back(path);
        out << "wrote " << path.string() << "\n";
    }

    void manifest(double seconds, ordered_json extra = {}) {
        ordered_json doc;
        doc["program"] = "tfim-rescale";
        doc["version"] = kVersion;
        doc["mode"] = std::string(to_string(config.mode));
        doc["config"] = ordered_json::parse(config_to_json(config));
        doc["wall_seconds"] = seconds;
        long long peak = 0;
        for (const auto &r : runs) {
            peak = std::max(peak, r.at("peak_bond").get<long long>());
        }
        doc["peak_bond"] = peak;
        doc["runs"] = runs;
        ordered_json outputs = ordered_json::array();
        for (const auto &p : report.outputs) {
            outputs.push_back(p.filename().string());
        }
        doc["outputs"] = outputs;
        for (auto it = extra.begin(); it != extra.end(); ++it) {
            doc[it.key()] = it.value();
        }
        const auto path = config.output_dir / "manifest.json";
        write_text(path, doc.dump(2) + "\n");
        report.outputs.push_back(path);
        out << "wrote " << path.string() << "\n";
    }
};

std::vector<SeriesTask> grid_tasks(const RunConfig &config, bool exact) {
    std::vector<SeriesTask> tasks;
    for (double dt : config.delta_thetas) {
        if (exact) {
            tasks.push_back({config.grid, dt, 0});
            continue;
        }
        for (int chi : config.chis) {
            tasks.push_back({config.grid, dt, chi});
        }
    }
    return tasks;
}

RunReport run_evolutions(const RunConfig &config, std::ostream &out, bool exact) {
    const auto start = std::chrono::steady_clock::now();
    ensure_directory(config.output_dir);
    std::vector<SeriesTask> tasks = grid_tasks(config, exact);
    if (config.mode == Mode::evolve_mps) {
        // One bond dimension per evolve-mps run.
        std::vector<SeriesTask> first;
        for (const auto &t : tasks) {
            if (t.chi == config.chis.front()) {
                first.push_back(t);
            }
        }
        tasks = std::move(first);
    }
    const auto results =
        run_series(tasks, config.params, config.exact_cap, config.jobs);
    Writer w{config, out, {}};
    for (const auto &s : results) {
        const SeriesAnnotation a =
            exact ? SeriesAnnotation{}
                  : annotate(config, s.task.delta_theta, s.task.grid.n(), s.task.chi);
        w.series(s, a);
    }
    w.manifest(std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                   .count());
    return w.report;
}

RunReport run_calibrate(const RunConfig &config, std::ostream &out) {
    const auto start = std::chrono::steady_clock::now();
    ensure_directory(config.output_dir);
    const CalibrationDataset data =
        collect_calibration_data(config.grids, config.chis, config.delta_thetas,
                                 config.params, config.exact_cap, config.jobs);
    Writer w{config, out, {}};
    ordered_json summary = ordered_json::array();
    for (double dt : config.delta_thetas) {
        const CalibrationResult r = calibrate(data, config.grids, config.chis, dt);
        const std::string name = calibration_file_name(dt);
        w.file(name, calibration_to_json(r));
        summary.push_back({{"delta_theta", dt},
                           {"file", name},
                           {"a", r.gamma_fit.a},
                           {"b", r.gamma_fit.b},
                           {"gamma_r_squared", r.gamma_fit.r_squared}});
        for (const auto &g : config.grids) {
            w.series(data.exact(g, dt), SeriesAnnotation{});
            for (int chi : config.chis) {
                const ErrorPrediction e = predict_error(r.error_model, g.n(), chi);
                w.series(data.mps(g, dt, chi),
                         SeriesAnnotation{r.gamma_fit.gamma(g.n(), chi), e.mean, e.max});
            }
        }
        out << "delta_theta=" << fmt17(dt) << " a=" << fmt17(r.gamma_fit.a)
            << " b=" << fmt17(r.gamma_fit.b)
            << " R2=" << fmt17(r.gamma_fit.r_squared) << "\n";
    }
    w.manifest(std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                   .count(),
               ordered_json{{"calibrations", summary}});
    return w.report;
}

RunReport run_predict(const RunConfig &config, std::ostream &out) {
    RunReport report;
    std::string csv = "n,chi,delta_theta,gamma_fit,eps_mean_pred,eps_max_pred\n";
    const int n = config.grid.n();
    for (double dt : config.delta_thetas) {
        for (int chi : config.chis) {
            const SeriesAnnotation a = annotate(config, dt, n, chi);
            out << "n=" << n << " chi=" << chi << " delta_theta=" << fmt17(dt)
                << " gamma_fit=" << fmt17(a.gamma) << " eps_mean=" << fmt17(a.eps_mean)
                << " eps_max=" << fmt17(a.eps_max) << "\n";
            csv += std::to_string(n) + "," + std::to_string(chi) + "," + fmt17(dt) +
                   "," + fmt17(a.gamma) + "," + fmt17(a.eps_mean) + "," +
                   fmt17(a.eps_max) + "\n";
        }
    }
    if (config.output_given) {
        ensure_directory(config.output_dir);
        const auto path = config.output_dir / "predict.csv";
        write_text(path, csv);
        report.outputs.push_back(path);
    }
    return report;
}

} // namespace

std::string series_csv_header() {
    return "step,f_step,f_cum,z_tot_raw,z_tot_rescaled,z2_raw,z2_rescaled,"
           "gamma_used,eps_mean_pred,eps_max_pred";
}

std::string series_csv(const std::vector<StepRecord> &records,
                       const SeriesAnnotation &annotation) {
    std::string text = series_csv_header() + "\n";
    for (const auto &r : records) {
        const double z_resc = r.z_tot * r.f_cum;
        const double z2_resc = r.z2_tot * std::pow(r.f_cum, annotation.gamma);
        text += std::to_string(r.step);
        for (double v : {r.f_step, r.f_cum, r.z_tot, z_resc, r.z2_tot, z2_resc,
                         annotation.gamma, annotation.eps_mean, annotation.eps_max}) {
            text += ',';
            text += fmt17(v);
        }
        text += '\n';
    }
    return text;
}

std::string series_file_name(int lx, int ly, int chi, double delta_theta) {
    char buf[128];
    if (chi == 0) {
        std::snprintf(buf, sizeof buf, "tfim_%dx%d_exact_dtheta%.6f.csv", lx, ly,
                      delta_theta);
    } else {
        std::snprintf(buf, sizeof buf, "tfim_%dx%d_chi%d_dtheta%.6f.csv", lx, ly, chi,
                      delta_theta);
    }
    return buf;
}

std::string calibration_file_name(double delta_theta) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "calibration_dtheta%.6f.json", delta_theta);
    return buf;
}

SeriesAnnotation annotate(const RunConfig &config, double delta_theta, int n,
                          int chi) {
    SeriesAnnotation a;
    if (config.gamma_source == GammaSource::explicit_value) {
        a.gamma = config.gamma_value;
        const auto table = load_reference_constants(config.constants_file);
        if (auto entry = table.find(delta_theta)) {
            const ErrorPrediction e = predict_error(entry->error, n, chi);
            a.eps_mean = e.mean;
            a.eps_max = e.max;
        } else {
            a.eps_mean = std::numeric_limits<double>::quiet_NaN();
            a.eps_max = std::numeric_limits<double>::quiet_NaN();
        }
        return a;
    }
    const TemperatureConstants t = constants_for(config, delta_theta);
    a.gamma = t.gamma.gamma(n, chi);
    const ErrorPrediction e = predict_error(t.error, n, chi);
    a.eps_mean = e.mean;
    a.eps_max = e.max;
    return a;
}

RunReport run(const RunConfig &config, std::ostream &out) {
    switch (config.mode) {
    case Mode::evolve_mps:
    case Mode::sweep:
        return run_evolutions(config, out, false);
    case Mode::evolve_exact:
        return run_evolutions(config, out, true);
    case Mode::calibrate:
        return run_calibrate(config, out);
    case Mode::predict:
        return run_predict(config, out);
    }
    throw InputError("unknown mode");
}

} // namespace tfim
