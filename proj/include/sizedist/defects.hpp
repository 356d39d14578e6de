#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "sizedist/dataset.hpp"
#include "sizedist/fitting.hpp"

namespace sizedist {

enum class DefectKind { Pre, Post };

std::string_view defect_kind_name(DefectKind kind);  // "pre" / "post"
DefectKind defect_kind_from_name(std::string_view name);

// Cumulative defect share against cumulative program share, programs ordered
// largest LOC first (equal sizes ordered by id). Point k is
// (k/n, defects of the k largest programs / total defects), k = 1..n.
struct AlbergCurve {
    DefectKind kind = DefectKind::Pre;
    std::vector<CurvePoint> points;
};

// Throws MissingDefectDataError when any record lacks the requested count,
// ZeroDefectsError when the counts sum to zero.
AlbergCurve alberg_curve(const Dataset& ds, DefectKind kind);

struct ConcentrationRow {
    double top_percent = 0.0;
    std::size_t programs = 0;    // k = round-half-up(percent * n / 100)
    double defect_share = 0.0;
    bool tie_at_cut = false;     // equal-LOC programs straddle the cut
};

struct ConcentrationTable {
    DefectKind kind = DefectKind::Pre;
    std::vector<ConcentrationRow> rows;
};

// Share of defects held by the top p% largest programs, one row per
// requested percentage. Percentages must lie in (0, 100].
ConcentrationTable concentration_table(const Dataset& ds, DefectKind kind,
                                       std::span<const double> percents);

inline constexpr double kDefaultTopPercents[] = {5, 10, 15, 20, 25};

// Weibull fit of the full-resolution curve.
WeibullFit fit_defect_weibull(const AlbergCurve& curve);

// Uniform thinning (in program fraction) for plot output. Keeps first and
// last points. Fits always run on the full curve, never on this.
std::vector<CurvePoint> downsample_curve(std::span<const CurvePoint> points,
                                         std::size_t max_points);

}  // namespace sizedist
