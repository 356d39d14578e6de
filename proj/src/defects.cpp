#include "sizedist/defects.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>

#include "sizedist/errors.hpp"
#include "sizedist/estimation.hpp"

namespace sizedist {

namespace {

// Record indices ordered by LOC descending, id ascending among equals.
std::vector<std::size_t> size_ranked_indices(const Dataset& ds) {
    std::vector<std::size_t> idx(ds.records.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const auto& ra = ds.records[a];
        const auto& rb = ds.records[b];
        if (ra.loc != rb.loc) {
            return ra.loc > rb.loc;
        }
        return ra.id < rb.id;
    });
    return idx;
}

std::int64_t defect_count(const ProgramRecord& r, DefectKind kind) {
    const auto& v = kind == DefectKind::Pre ? r.pre_defects : r.post_defects;
    if (!v) {
        throw MissingDefectDataError("record `" + r.id + "` has no " +
                                     std::string(defect_kind_name(kind)) + "-release defect count");
    }
    return *v;
}

struct RankedDefects {
    std::vector<std::size_t> order;
    std::vector<std::int64_t> cumulative;  // defects of the first k programs
    std::int64_t total = 0;
};

RankedDefects rank_defects(const Dataset& ds, DefectKind kind) {
    if (ds.records.empty()) {
        throw EmptySampleError();
    }
    RankedDefects rd;
    rd.order = size_ranked_indices(ds);
    rd.cumulative.reserve(rd.order.size());
    for (std::size_t i : rd.order) {
        rd.total += defect_count(ds.records[i], kind);
        rd.cumulative.push_back(rd.total);
    }
    if (rd.total == 0) {
        throw ZeroDefectsError();
    }
    return rd;
}

}  // namespace

std::string_view defect_kind_name(DefectKind kind) {
    return kind == DefectKind::Pre ? "pre" : "post";
}

DefectKind defect_kind_from_name(std::string_view name) {
    if (name == "pre") {
        return DefectKind::Pre;
    }
    if (name == "post") {
        return DefectKind::Post;
    }
    throw DomainError("defect kind must be `pre` or `post`, got `" + std::string(name) + "`");
}

AlbergCurve alberg_curve(const Dataset& ds, DefectKind kind) {
    const RankedDefects rd = rank_defects(ds, kind);
    const double n = static_cast<double>(rd.order.size());
    const double total = static_cast<double>(rd.total);

    AlbergCurve curve;
    curve.kind = kind;
    curve.points.reserve(rd.order.size());
    for (std::size_t k = 1; k <= rd.order.size(); ++k) {
        curve.points.push_back({static_cast<double>(k) / n,
                                static_cast<double>(rd.cumulative[k - 1]) / total});
    }
    return curve;
}

ConcentrationTable concentration_table(const Dataset& ds, DefectKind kind,
                                       std::span<const double> percents) {
    for (double p : percents) {
        if (!(p > 0.0) || p > 100.0) {
            throw BadRangeError("top percentage must be in (0, 100], got " + std::to_string(p));
        }
    }
    const RankedDefects rd = rank_defects(ds, kind);
    const std::size_t n = rd.order.size();

    ConcentrationTable table;
    table.kind = kind;
    table.rows.reserve(percents.size());
    for (double p : percents) {
        const auto k = static_cast<std::size_t>(round_half_up(p * static_cast<double>(n) / 100.0));
        ConcentrationRow row;
        row.top_percent = p;
        row.programs = k;
        row.defect_share = k == 0 ? 0.0
                                  : static_cast<double>(rd.cumulative[k - 1]) / static_cast<double>(rd.total);
        row.tie_at_cut = k > 0 && k < n &&
                         ds.records[rd.order[k - 1]].loc == ds.records[rd.order[k]].loc;
        table.rows.push_back(row);
    }
    return table;
}

WeibullFit fit_defect_weibull(const AlbergCurve& curve) {
    return fit_weibull(curve.points);
}

std::vector<CurvePoint> downsample_curve(std::span<const CurvePoint> points,
                                         std::size_t max_points) {
    if (max_points < 2) {
        throw DomainError("max_points must be >= 2");
    }
    std::vector<CurvePoint> out;
    if (points.size() <= max_points) {
        out.assign(points.begin(), points.end());
        return out;
    }
    out.reserve(max_points);
    const double step = static_cast<double>(points.size() - 1) / static_cast<double>(max_points - 1);
    std::size_t last = points.size();  // sentinel
    for (std::size_t i = 0; i < max_points; ++i) {
        const auto idx = static_cast<std::size_t>(round_half_up(static_cast<double>(i) * step));
        if (idx != last) {
            out.push_back(points[idx]);
            last = idx;
        }
    }
    return out;
}

}  // namespace sizedist
