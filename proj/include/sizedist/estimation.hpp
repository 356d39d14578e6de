#pragma once

#include <cstdint>
#include <optional>

#include "sizedist/distributions.hpp"

namespace sizedist {

// Sample means of the lognormal parameters over the reference corpus of
// large Java systems; the basis of the general size model.
LognormalParams corpus_default_params();

// Expected program size under the corpus defaults, rounded to 2 decimals:
// the constant of the "total size = N x 113.88" rule of thumb. Computed,
// not hard-coded; validated against 113.88 +/- 0.01 at first use.
double corpus_rule_constant();

// Estimates with MRE at or below this are conventionally acceptable.
inline constexpr double kAcceptableMre = 0.25;

// Nearest integer with .5 rounding up: floor(x + 0.5).
double round_half_up(double x);

// Analytic mean of the lognormal: exp(mu + sigma^2 / 2).
double expected_program_size(const LognormalParams& p);

struct EstimationResult {
    double estimate = 0.0;  // unrounded
    double rounded = 0.0;   // half-up to integer
    std::optional<double> actual;
    std::optional<double> mre;        // set iff actual is set
    std::optional<bool> acceptable;   // mre <= kAcceptableMre
};

// Total size of n programs. The defaults overload applies the rule-of-thumb
// constant (expected size at 2 decimals); the explicit-parameter overload
// uses the analytic mean at full precision.
EstimationResult estimate_total_size(std::int64_t n_programs);
EstimationResult estimate_total_size(std::int64_t n_programs, const LognormalParams& p);

// Expected number of programs sized in [x1, x2]:
// n * (CDF(x2) - CDF(x1)). Requires 0 < x1 < x2, else BadRangeError.
EstimationResult estimate_count_in_range(std::int64_t n_programs, double x1, double x2);
EstimationResult estimate_count_in_range(std::int64_t n_programs, double x1, double x2,
                                         const LognormalParams& p);

// Magnitude of relative error |actual - estimate| / actual; actual must be > 0.
double mre(double actual, double estimate);

// Copy of r with actual, mre and acceptable filled in.
EstimationResult with_actual(EstimationResult r, double actual);

}  // namespace sizedist
