#include "sizedist/fitting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "sizedist/errors.hpp"

namespace sizedist {

namespace {

double sum_sq_residuals(std::span<const CurvePoint> pts, const WeibullParams& p) {
    double ssr = 0.0;
    for (const auto& pt : pts) {
        const double r = pt.y - weibull_cdf(pt.x, p);
        ssr += r * r;
    }
    return ssr;
}

// Initial guess from the linearization ln(-ln(1-y)) = beta*ln(x) - beta*ln(gamma),
// fitted by ordinary least squares over points where the transform is finite.
WeibullParams linearized_init(std::span<const CurvePoint> pts) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (const auto& pt : pts) {
        if (!(pt.y > 0.0) || !(pt.y < 1.0)) {
            continue;  // ln(-ln(1-y)) undefined at y = 0 and y = 1
        }
        const double lx = std::log(pt.x);
        const double ly = std::log(-std::log(1.0 - pt.y));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n >= 2) {
        const double den = static_cast<double>(n) * sxx - sx * sx;
        if (std::abs(den) > 1e-300) {
            const double beta = (static_cast<double>(n) * sxy - sx * sy) / den;
            if (beta > 0.0 && std::isfinite(beta)) {
                const double intercept = (sy - beta * sx) / static_cast<double>(n);
                const double gamma = std::exp(-intercept / beta);
                if (gamma > 0.0 && std::isfinite(gamma)) {
                    return {gamma, beta};
                }
            }
        }
    }
    // Degenerate transform (e.g. a step curve); start from the empirical
    // 1 - 1/e crossing with exponential shape.
    double gamma = pts[pts.size() / 2].x;
    constexpr double kOneMinusInvE = 0.6321205588285577;
    for (const auto& pt : pts) {
        if (pt.y >= kOneMinusInvE) {
            gamma = pt.x;
            break;
        }
    }
    return {gamma, 1.0};
}

}  // namespace

FitQuality fit_quality(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.size() != predicted.size()) {
        throw DomainError("actual and predicted series differ in length");
    }
    const std::size_t n = actual.size();
    if (n < 3) {
        throw TooFewPointsError("fit quality needs at least 3 points");
    }
    double mean = 0.0;
    for (double y : actual) {
        mean += y;
    }
    mean /= static_cast<double>(n);

    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = actual[i] - predicted[i];
        const double d = actual[i] - mean;
        ss_res += r * r;
        ss_tot += d * d;
    }

    FitQuality q;
    q.n_points = n;
    if (ss_res == 0.0) {
        q.r_squared = 1.0;
    } else if (ss_tot == 0.0) {
        q.r_squared = -std::numeric_limits<double>::infinity();
    } else {
        q.r_squared = 1.0 - ss_res / ss_tot;
    }
    q.se = std::sqrt(ss_res / static_cast<double>(n - 2));
    return q;
}

LognormalParams fit_lognormal_mle(std::span<const double> sizes) {
    if (sizes.size() < 2) {
        throw EmptySampleError("lognormal MLE needs at least 2 observations");
    }
    const double n = static_cast<double>(sizes.size());
    double sum = 0.0;
    for (double s : sizes) {
        if (!(s > 0.0)) {
            throw DomainError("sizes must be > 0");
        }
        sum += std::log(s);
    }
    const double mu = sum / n;
    double ss = 0.0;
    for (double s : sizes) {
        const double d = std::log(s) - mu;
        ss += d * d;
    }
    const double sigma = std::sqrt(ss / n);
    if (sigma == 0.0) {
        throw DegenerateSampleError("all sizes equal; sigma = 0 is a rejected degenerate fit");
    }
    return {mu, sigma};
}

FitQuality fit_quality_cdf(std::span<const double> sizes, const LognormalParams& p) {
    if (sizes.empty()) {
        throw EmptySampleError();
    }
    std::vector<double> sorted(sizes.begin(), sizes.end());
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted.front();
    const double hi = sorted.back();
    if (!(lo > 0.0)) {
        throw DomainError("sizes must be > 0");
    }

    std::vector<double> grid;
    for (double x = lo; x < hi; x *= 2.0) {
        grid.push_back(x);
    }
    grid.push_back(hi);
    if (grid.size() < 3) {
        throw TooFewPointsError("CDF evaluation grid has fewer than 3 points");
    }

    const double n = static_cast<double>(sorted.size());
    std::vector<double> actual(grid.size()), predicted(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto it = std::upper_bound(sorted.begin(), sorted.end(), grid[i]);
        actual[i] = static_cast<double>(it - sorted.begin()) / n;
        predicted[i] = lognormal_cdf(grid[i], p);
    }
    return fit_quality(actual, predicted);
}

WeibullFit fit_weibull(std::span<const CurvePoint> points) {
    if (points.size() < 4) {
        throw TooFewPointsError("Weibull fit needs at least 4 points");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].x > 0.0)) {
            throw DomainError("x values must be > 0");
        }
        if (points[i].y < 0.0 || points[i].y > 1.0) {
            throw DomainError("y values must lie in [0, 1]");
        }
        if (i > 0) {
            if (!(points[i].x > points[i - 1].x)) {
                throw DomainError("x values must be strictly increasing");
            }
            if (points[i].y < points[i - 1].y) {
                throw DomainError("y values must be non-decreasing");
            }
        }
    }

    constexpr int kMaxIterations = 100;
    constexpr double kParamTol = 1e-10;

    WeibullFit fit;
    fit.params = linearized_init(points);
    double ssr = sum_sq_residuals(points, fit.params);
    double lambda = 1e-3;

    int iter = 0;
    for (; iter < kMaxIterations && !fit.converged; ++iter) {
        // Normal equations of the Gauss-Newton step, damped Levenberg style.
        double jtj00 = 0.0, jtj01 = 0.0, jtj11 = 0.0, jtr0 = 0.0, jtr1 = 0.0;
        const double gamma = fit.params.gamma;
        const double beta = fit.params.beta;
        for (const auto& pt : points) {
            const double t = std::pow(pt.x / gamma, beta);
            const double e = std::exp(-t);
            const double r = pt.y - (1.0 - e);
            const double dg = -e * t * beta / gamma;       // dP/dgamma
            const double db = e * t * std::log(pt.x / gamma);  // dP/dbeta
            jtj00 += dg * dg;
            jtj01 += dg * db;
            jtj11 += db * db;
            jtr0 += dg * r;
            jtr1 += db * r;
        }

        bool stepped = false;
        for (int attempt = 0; attempt < 32; ++attempt) {
            const double a00 = jtj00 * (1.0 + lambda);
            const double a11 = jtj11 * (1.0 + lambda);
            const double det = a00 * a11 - jtj01 * jtj01;
            if (std::abs(det) < 1e-300) {
                lambda *= 10.0;
                continue;
            }
            const double step_g = (jtr0 * a11 - jtr1 * jtj01) / det;
            const double step_b = (jtr1 * a00 - jtr0 * jtj01) / det;
            const WeibullParams trial{gamma + step_g, beta + step_b};
            if (trial.gamma > 0.0 && trial.beta > 0.0) {
                const double trial_ssr = sum_sq_residuals(points, trial);
                if (trial_ssr <= ssr) {
                    fit.params = trial;
                    ssr = trial_ssr;
                    lambda = std::max(lambda * 0.3, 1e-12);
                    if (std::max(std::abs(step_g), std::abs(step_b)) < kParamTol) {
                        fit.converged = true;
                    }
                    stepped = true;
                    break;
                }
            }
            lambda *= 10.0;
        }
        if (!stepped) {
            // No damping level improves the residual: we are at a local
            // minimum to within floating point resolution.
            fit.converged = true;
        }
    }
    fit.iterations = iter;

    std::vector<double> actual(points.size()), predicted(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        actual[i] = points[i].y;
        predicted[i] = weibull_cdf(points[i].x, fit.params);
    }
    fit.quality = fit_quality(actual, predicted);
    return fit;
}

}  // namespace sizedist
