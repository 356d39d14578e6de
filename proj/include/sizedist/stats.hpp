#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sizedist/dataset.hpp"

namespace sizedist {

struct DescriptiveStats {
    std::size_t n = 0;
    Loc min = 0;
    double median = 0.0;  // midpoint of the two central values for even n
    Loc max = 0;
    Loc mode = 0;  // most frequent value, smallest on ties
    double mean = 0.0;
    double std_dev = 0.0;  // sample (n-1) denominator
};

// Throws EmptySampleError on an empty span.
DescriptiveStats describe(std::span<const Loc> sizes);

struct CdfPoint {
    Loc x = 0;
    double fraction = 0.0;  // share of values <= x

    bool operator==(const CdfPoint&) const = default;
};

// One point per distinct size, x strictly increasing, last fraction 1.0.
struct EmpiricalCdf {
    std::vector<CdfPoint> points;
};

EmpiricalCdf empirical_cdf(std::span<const Loc> sizes);

struct RankedSize {
    std::size_t rank = 0;  // 1-based
    Loc size = 0;

    bool operator==(const RankedSize&) const = default;
};

// Sizes ordered largest first; equal sizes keep their input order.
std::vector<RankedSize> rank_size_curve(std::span<const Loc> sizes);

// Share of values strictly below / strictly above a threshold.
double fraction_below(std::span<const Loc> sizes, Loc threshold);
double fraction_above(std::span<const Loc> sizes, Loc threshold);

}  // namespace sizedist
