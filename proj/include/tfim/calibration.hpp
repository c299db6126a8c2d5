#pragma once

#include <span>
#include <vector>

namespace tfim {

/// raw(s) * fidelity(s)^gamma elementwise. gamma = 1 applied to a Z_tot
/// series is the plain fidelity rescaling of the magnetization.
/// Throws InputError on a length mismatch or a fidelity outside (0, 1].
std::vector<double> rescale(std::span<const double> raw,
                            std::span<const double> fidelity, double gamma);

/// Mean and max of |a(s) - b(s)| over the series.
struct SeriesError {
    double mean = 0.0;
    double max = 0.0;
};
SeriesError series_error(std::span<const double> a, std::span<const double> b);

struct GammaSearchOptions {
    double lower = 0.0;
    double upper = 8.0;
    double coarse_step = 0.05;
    double tolerance = 1e-4;
};

struct GammaSearch {
    double gamma = 0.0;
    double max_abs_error = 0.0;     // at gamma
    double unrescaled_error = 0.0;  // at gamma = 0
    bool degenerate = false;        // fidelity == 1 everywhere
};

/**
 * argmin over gamma of max_s |raw(s) F(s)^gamma - exact(s)|: coarse scan of
 * the whole interval, then golden-section refinement around the best coarse
 * point. The result never does worse than gamma = 0.
 */
GammaSearch find_gamma_star(std::span<const double> raw,
                            std::span<const double> fidelity,
                            std::span<const double> exact,
                            const GammaSearchOptions &options = {});

struct GammaPoint {
    int n = 0;
    int chi = 0;
    double gamma_star = 0.0;
};

/// x coordinate of the scaling law: log2(chi) / n.
double reduced_bond_dimension(int n, int chi);

enum class InterceptMode { free, zero, automatic };

/// gamma_fit = a * log2(chi) / n + b, ordinary least squares.
struct GammaFit {
    double a = 0.0;
    double b = 0.0;
    double a_err = 0.0;
    double b_err = 0.0;
    double r_squared = 0.0;
    bool intercept_fixed = false;
    std::vector<GammaPoint> points;

    double gamma(int n, int chi) const {
        return a * reduced_bond_dimension(n, chi) + b;
    }
};

/// automatic: fit with a free intercept, then refit through the origin when
/// |b| < 2 * b_err. Needs >= 3 points with at least two distinct x values.
GammaFit fit_gamma_scaling(std::span<const GammaPoint> points,
                           InterceptMode mode = InterceptMode::automatic);

/// eps = k * chi^(alpha / n)
struct PowerLaw {
    double k = 0.0;
    double alpha = 0.0;
    double k_err = 0.0;
    double alpha_err = 0.0;
    double r_squared = 0.0;

    double operator()(int n, int chi) const;
};

struct ErrorModel {
    PowerLaw mean;
    PowerLaw max;
};

struct ErrorPoint {
    int n = 0;
    int chi = 0;
    double eps_mean = 0.0;
    double eps_max = 0.0;
};

/// Linear fit of ln(eps) against ln(chi) / n for the mean and max errors.
/// Throws InputError for non-positive eps or fewer than 3 points.
ErrorModel fit_error_model(std::span<const ErrorPoint> points);

struct ErrorPrediction {
    double mean = 0.0;
    double max = 0.0;
};
ErrorPrediction predict_error(const ErrorModel &model, int n, int chi);

/// Unweighted least squares y = slope * x + intercept (or through the
/// origin), with standard errors and the centred R^2.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_err = 0.0;
    double intercept_err = 0.0;
    double r_squared = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y,
                 bool through_origin = false);

} // namespace tfim
