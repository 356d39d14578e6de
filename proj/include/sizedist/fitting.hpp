#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sizedist/distributions.hpp"

namespace sizedist {

// Goodness of fit over a set of evaluation points.
// r_squared = 1 - SS_res / SS_tot, se = sqrt(SS_res / (n - 2)).
struct FitQuality {
    double r_squared = 0.0;
    double se = 0.0;
    std::size_t n_points = 0;
};

// Raw kernel: actual vs predicted series of equal length (>= 3).
FitQuality fit_quality(std::span<const double> actual, std::span<const double> predicted);

// Maximum likelihood estimate of lognormal parameters:
// mu = mean of ln(size), sigma = population (divide-by-n) std dev of ln(size).
// Throws EmptySampleError for n < 2, DegenerateSampleError when all sizes are
// equal (sigma would be 0), DomainError for sizes <= 0.
LognormalParams fit_lognormal_mle(std::span<const double> sizes);

// Goodness of fit of a lognormal model against the empirical CDF, sampled at
// the boundaries of log2-spaced size bins from min(size) to max(size):
// min, 2*min, 4*min, ... capped at max. Needs >= 3 grid points.
FitQuality fit_quality_cdf(std::span<const double> sizes, const LognormalParams& p);

struct CurvePoint {
    double x = 0.0;
    double y = 0.0;
};

struct WeibullFit {
    WeibullParams params;
    FitQuality quality;
    bool converged = false;
    int iterations = 0;
};

// Least-squares fit of the Weibull CDF to (x, y) points with x strictly
// increasing in (0, inf) and y non-decreasing in [0, 1]. Initializes from a
// linear regression on ln(-ln(1-y)) vs ln(x) over points with 0 < y < 1,
// then refines by damped Gauss-Newton until the parameter change drops below
// 1e-10 or 100 iterations. On non-convergence the best iterate is returned
// with converged = false.
WeibullFit fit_weibull(std::span<const CurvePoint> points);

}  // namespace sizedist
