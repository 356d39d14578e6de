#include "sizedist/estimation.hpp"

#include <cmath>
#include <string>

#include "sizedist/errors.hpp"

namespace sizedist {

LognormalParams corpus_default_params() {
    return {3.8277, 1.3472};
}

double corpus_rule_constant() {
    static const double rule = [] {
        const double exact = expected_program_size(corpus_default_params());
        const double rounded = round_half_up(exact * 100.0) / 100.0;
        if (std::abs(rounded - 113.88) > 0.01) {
            throw DomainError("corpus rule constant drifted from 113.88: " + std::to_string(rounded));
        }
        return rounded;
    }();
    return rule;
}

double round_half_up(double x) {
    return std::floor(x + 0.5);
}

double expected_program_size(const LognormalParams& p) {
    if (!(p.sigma > 0.0)) {
        throw DomainError("sigma must be > 0");
    }
    return std::exp(p.mu + p.sigma * p.sigma / 2.0);
}

namespace {

EstimationResult make_result(double estimate) {
    EstimationResult r;
    r.estimate = estimate;
    r.rounded = round_half_up(estimate);
    return r;
}

void check_n(std::int64_t n_programs) {
    if (n_programs < 1) {
        throw DomainError("n_programs must be >= 1");
    }
}

}  // namespace

EstimationResult estimate_total_size(std::int64_t n_programs) {
    check_n(n_programs);
    return make_result(static_cast<double>(n_programs) * corpus_rule_constant());
}

EstimationResult estimate_total_size(std::int64_t n_programs, const LognormalParams& p) {
    check_n(n_programs);
    return make_result(static_cast<double>(n_programs) * expected_program_size(p));
}

EstimationResult estimate_count_in_range(std::int64_t n_programs, double x1, double x2) {
    return estimate_count_in_range(n_programs, x1, x2, corpus_default_params());
}

EstimationResult estimate_count_in_range(std::int64_t n_programs, double x1, double x2,
                                         const LognormalParams& p) {
    check_n(n_programs);
    if (!(x1 > 0.0) || !(x2 > x1)) {
        throw BadRangeError("range must satisfy 0 < x1 < x2");
    }
    const double span = lognormal_cdf(x2, p) - lognormal_cdf(x1, p);
    return make_result(static_cast<double>(n_programs) * span);
}

double mre(double actual, double estimate) {
    if (!(actual > 0.0)) {
        throw DomainError("actual must be > 0");
    }
    return std::abs(actual - estimate) / actual;
}

EstimationResult with_actual(EstimationResult r, double actual) {
    r.actual = actual;
    r.mre = mre(actual, r.estimate);
    r.acceptable = *r.mre <= kAcceptableMre;
    return r;
}

}  // namespace sizedist
