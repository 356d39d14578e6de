#include "sizedist/distributions.hpp"

#include <cmath>

#include "sizedist/errors.hpp"

namespace sizedist {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt2Pi = 2.5066282746310002;

void check_sigma(double sigma) {
    if (!(sigma > 0.0)) {
        throw DomainError("sigma must be > 0");
    }
}

void check_weibull(const WeibullParams& p) {
    if (!(p.gamma > 0.0) || !(p.beta > 0.0)) {
        throw DomainError("Weibull parameters must be > 0");
    }
}

}  // namespace

double normal_cdf(double z) {
    // erfc keeps the upper tail well conditioned where 1 - erf(z) would cancel.
    return 0.5 * std::erfc(-z / kSqrt2);
}

double lognormal_pdf(double x, const LognormalParams& p) {
    check_sigma(p.sigma);
    if (!(x > 0.0)) {
        throw DomainError("lognormal_pdf requires x > 0");
    }
    const double d = (std::log(x) - p.mu) / p.sigma;
    return std::exp(-0.5 * d * d) / (p.sigma * x * kSqrt2Pi);
}

double lognormal_cdf(double x, const LognormalParams& p) {
    check_sigma(p.sigma);
    if (!(x > 0.0)) {
        throw DomainError("lognormal_cdf requires x > 0");
    }
    return normal_cdf((std::log(x) - p.mu) / p.sigma);
}

double weibull_cdf(double x, const WeibullParams& p) {
    check_weibull(p);
    if (x < 0.0) {
        throw DomainError("weibull_cdf requires x >= 0");
    }
    if (x == 0.0) {
        return 0.0;
    }
    return 1.0 - std::exp(-std::pow(x / p.gamma, p.beta));
}

}  // namespace sizedist
