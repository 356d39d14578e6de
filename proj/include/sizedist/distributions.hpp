#pragma once

namespace sizedist {

// Lognormal size model: mu and sigma are mean and standard deviation of
// ln(size). mu is the scale parameter, sigma the shape parameter.
struct LognormalParams {
    double mu = 0.0;
    double sigma = 1.0;  // must be > 0
};

// Weibull accumulation model with CDF 1 - exp(-(x/gamma)^beta).
struct WeibullParams {
    double gamma = 1.0;  // scale, > 0
    double beta = 1.0;   // shape, > 0
};

// Standard normal CDF, accurate to machine precision via erfc.
double normal_cdf(double z);

double lognormal_pdf(double x, const LognormalParams& p);
double lognormal_cdf(double x, const LognormalParams& p);

double weibull_cdf(double x, const WeibullParams& p);

}  // namespace sizedist
