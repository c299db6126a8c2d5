#include "tfim/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tfim/errors.hpp"

namespace tfim {

namespace {

void check_lengths(std::size_t a, std::size_t b, const char *what) {
    if (a != b) {
        throw InputError(std::string(what) + ": series lengths differ (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

void check_fidelities(std::span<const double> fidelity) {
    for (double f : fidelity) {
        if (!(f > 0.0 && f <= 1.0)) {
            throw InputError("fidelity " + std::to_string(f) +
                             " outside (0, 1]");
        }
    }
}

} // namespace

std::vector<double> rescale(std::span<const double> raw,
                            std::span<const double> fidelity, double gamma) {
    check_lengths(raw.size(), fidelity.size(), "rescale");
    check_fidelities(fidelity);
    std::vector<double> out(raw.size());
    for (std::size_t s = 0; s < raw.size(); ++s) {
        out[s] = raw[s] * std::pow(fidelity[s], gamma);
    }
    return out;
}

SeriesError series_error(std::span<const double> a, std::span<const double> b) {
    check_lengths(a.size(), b.size(), "series_error");
    SeriesError e;
    if (a.empty()) {
        return e;
    }
    for (std::size_t s = 0; s < a.size(); ++s) {
        const double d = std::abs(a[s] - b[s]);
        e.mean += d;
        e.max = std::max(e.max, d);
    }
    e.mean /= static_cast<double>(a.size());
    return e;
}

GammaSearch find_gamma_star(std::span<const double> raw,
                            std::span<const double> fidelity,
                            std::span<const double> exact,
                            const GammaSearchOptions &options) {
    check_lengths(raw.size(), fidelity.size(), "find_gamma_star");
    check_lengths(raw.size(), exact.size(), "find_gamma_star");
    if (exact.empty()) {
        throw InputError("find_gamma_star: missing exact reference");
    }
    check_fidelities(fidelity);

    std::vector<double> log_f(fidelity.size());
    std::transform(fidelity.begin(), fidelity.end(), log_f.begin(),
                   [](double f) { return std::log(f); });
    auto objective = [&](double gamma) {
        double worst = 0.0;
        for (std::size_t s = 0; s < raw.size(); ++s) {
            worst = std::max(
                worst, std::abs(raw[s] * std::exp(gamma * log_f[s]) - exact[s]));
        }
        return worst;
    };

    GammaSearch out;
    out.unrescaled_error = objective(0.0);
    if (std::all_of(fidelity.begin(), fidelity.end(),
                    [](double f) { return f == 1.0; })) {
        out.degenerate = true;
        out.gamma = 0.0;
        out.max_abs_error = out.unrescaled_error;
        return out;
    }

    const int count = static_cast<int>(std::floor(
        (options.upper - options.lower) / options.coarse_step + 0.5));
    double best_gamma = options.lower;
    double best_value = objective(best_gamma);
    for (int k = 1; k <= count; ++k) {
        const double g = std::min(options.upper, options.lower + k * options.coarse_step);
        const double v = objective(g);
        if (v < best_value) {
            best_value = v;
            best_gamma = g;
        }
    }

    // Golden section on the bracket around the best coarse point.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = std::max(options.lower, best_gamma - options.coarse_step);
    double hi = std::min(options.upper, best_gamma + options.coarse_step);
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    while (hi - lo > options.tolerance) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = objective(x2);
        }
    }
    const double refined = 0.5 * (lo + hi);
    const double refined_value = objective(refined);
    if (refined_value < best_value) {
        best_value = refined_value;
        best_gamma = refined;
    }
    if (options.lower <= 0.0 && 0.0 <= options.upper &&
        out.unrescaled_error <= best_value) {
        best_gamma = 0.0;
        best_value = out.unrescaled_error;
    }
    out.gamma = best_gamma;
    out.max_abs_error = best_value;
    return out;
}

double reduced_bond_dimension(int n, int chi) {
    return std::log2(static_cast<double>(chi)) / n;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y,
                 bool through_origin) {
    check_lengths(x.size(), y.size(), "fit_line");
    const std::size_t m = x.size();
    const std::size_t params = through_origin ? 1 : 2;
    if (m < params + 1) {
        throw InputError("fit_line needs at least " +
                         std::to_string(params + 1) + " points, got " +
                         std::to_string(m));
    }
    double x_mean = 0.0;
    double y_mean = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        x_mean += x[i];
        y_mean += y[i];
    }
    x_mean /= static_cast<double>(m);
    y_mean /= static_cast<double>(m);

    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    double xx = 0.0;
    double xy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - x_mean) * (x[i] - x_mean);
        sxy += (x[i] - x_mean) * (y[i] - y_mean);
        syy += (y[i] - y_mean) * (y[i] - y_mean);
        xx += x[i] * x[i];
        xy += x[i] * y[i];
    }

    LineFit fit;
    if (through_origin) {
        if (xx == 0.0) {
            throw InputError("fit_line: all x are zero");
        }
        fit.slope = xy / xx;
    } else {
        if (!(sxx > 1e-300)) {
            throw InputError("fit_line: rank-deficient design (all x equal)");
        }
        fit.slope = sxy / sxx;
        fit.intercept = y_mean - fit.slope * x_mean;
    }
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        rss += r * r;
    }
    const double s2 = rss / static_cast<double>(m - params);
    if (through_origin) {
        fit.slope_err = std::sqrt(s2 / xx);
    } else {
        fit.slope_err = std::sqrt(s2 / sxx);
        fit.intercept_err =
            std::sqrt(s2 * (1.0 / static_cast<double>(m) + x_mean * x_mean / sxx));
    }
    fit.r_squared = syy > 0.0 ? 1.0 - rss / syy : 1.0;
    return fit;
}

GammaFit fit_gamma_scaling(std::span<const GammaPoint> points,
                           InterceptMode mode) {
    if (points.size() < 3) {
        throw InputError("gamma scaling fit needs at least 3 points");
    }
    std::vector<double> x;
    std::vector<double> y;
    for (const GammaPoint &p : points) {
        x.push_back(reduced_bond_dimension(p.n, p.chi));
        y.push_back(p.gamma_star);
    }
    bool fixed = mode == InterceptMode::zero;
    LineFit line = fit_line(x, y, fixed);
    if (mode == InterceptMode::automatic &&
        std::abs(line.intercept) < 2.0 * line.intercept_err) {
        line = fit_line(x, y, true);
        fixed = true;
    }
    GammaFit fit;
    fit.a = line.slope;
    fit.a_err = line.slope_err;
    fit.b = line.intercept;
    fit.b_err = line.intercept_err;
    fit.r_squared = line.r_squared;
    fit.intercept_fixed = fixed;
    fit.points.assign(points.begin(), points.end());
    return fit;
}

double PowerLaw::operator()(int n, int chi) const {
    return k * std::pow(static_cast<double>(chi), alpha / n);
}

ErrorModel fit_error_model(std::span<const ErrorPoint> points) {
    if (points.size() < 3) {
        throw InputError("error model fit needs at least 3 points");
    }
    std::vector<double> x;
    std::vector<double> y_mean;
    std::vector<double> y_max;
    for (const ErrorPoint &p : points) {
        if (!(p.eps_mean > 0.0) || !(p.eps_max > 0.0)) {
            throw InputError("error model fit needs positive errors");
        }
        x.push_back(std::log(static_cast<double>(p.chi)) / p.n);
        y_mean.push_back(std::log(p.eps_mean));
        y_max.push_back(std::log(p.eps_max));
    }
    auto to_law = [](const LineFit &line) {
        PowerLaw law;
        law.k = std::exp(line.intercept);
        law.k_err = law.k * line.intercept_err;
        law.alpha = line.slope;
        law.alpha_err = line.slope_err;
        law.r_squared = line.r_squared;
        return law;
    };
    return {to_law(fit_line(x, y_mean)), to_law(fit_line(x, y_max))};
}

ErrorPrediction predict_error(const ErrorModel &model, int n, int chi) {
    return {model.mean(n, chi), model.max(n, chi)};
}

} // namespace tfim
