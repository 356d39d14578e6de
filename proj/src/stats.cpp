#include "sizedist/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sizedist/errors.hpp"

namespace sizedist {

DescriptiveStats describe(std::span<const Loc> sizes) {
    if (sizes.empty()) {
        throw EmptySampleError();
    }
    std::vector<Loc> sorted(sizes.begin(), sizes.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();

    DescriptiveStats s;
    s.n = n;
    s.min = sorted.front();
    s.max = sorted.back();
    if (n % 2 == 1) {
        s.median = static_cast<double>(sorted[n / 2]);
    } else {
        s.median = (static_cast<double>(sorted[n / 2 - 1]) + static_cast<double>(sorted[n / 2])) / 2.0;
    }

    // Mode over the sorted run lengths; first (smallest) value wins ties.
    Loc mode = sorted.front();
    std::size_t best_run = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && sorted[j] == sorted[i]) ++j;
        if (j - i > best_run) {
            best_run = j - i;
            mode = sorted[i];
        }
        i = j;
    }
    s.mode = mode;

    double sum = 0.0;
    for (Loc v : sorted) {
        sum += static_cast<double>(v);
    }
    s.mean = sum / static_cast<double>(n);

    if (n > 1) {
        double ss = 0.0;
        for (Loc v : sorted) {
            const double d = static_cast<double>(v) - s.mean;
            ss += d * d;
        }
        s.std_dev = std::sqrt(ss / static_cast<double>(n - 1));
    }
    return s;
}

EmpiricalCdf empirical_cdf(std::span<const Loc> sizes) {
    if (sizes.empty()) {
        throw EmptySampleError();
    }
    std::vector<Loc> sorted(sizes.begin(), sizes.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());

    EmpiricalCdf cdf;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        cdf.points.push_back({sorted[i], static_cast<double>(j) / n});
        i = j;
    }
    return cdf;
}

std::vector<RankedSize> rank_size_curve(std::span<const Loc> sizes) {
    if (sizes.empty()) {
        throw EmptySampleError();
    }
    std::vector<Loc> desc(sizes.begin(), sizes.end());
    std::stable_sort(desc.begin(), desc.end(), [](Loc a, Loc b) { return a > b; });

    std::vector<RankedSize> curve(desc.size());
    for (std::size_t i = 0; i < desc.size(); ++i) {
        curve[i] = {i + 1, desc[i]};
    }
    return curve;
}

double fraction_below(std::span<const Loc> sizes, Loc threshold) {
    if (sizes.empty()) {
        throw EmptySampleError();
    }
    std::size_t count = 0;
    for (Loc v : sizes) {
        if (v < threshold) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(sizes.size());
}

double fraction_above(std::span<const Loc> sizes, Loc threshold) {
    if (sizes.empty()) {
        throw EmptySampleError();
    }
    std::size_t count = 0;
    for (Loc v : sizes) {
        if (v > threshold) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(sizes.size());
}

}  // namespace sizedist
