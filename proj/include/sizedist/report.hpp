#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sizedist/dataset.hpp"
#include "sizedist/defects.hpp"
#include "sizedist/estimation.hpp"
#include "sizedist/fitting.hpp"
#include "sizedist/stats.hpp"

namespace sizedist {

struct RangeEstimate {
    Loc x1 = 0;
    Loc x2 = 0;
    EstimationResult result;  // actual = number of records in [x1, x2]
};

struct DefectSection {
    DefectKind kind = DefectKind::Pre;
    std::int64_t total_defects = 0;
    ConcentrationTable concentration;
    std::optional<WeibullFit> weibull;  // absent when the curve is too short
};

// Everything the `report` command emits, in one value. Building it touches
// no clock: the timestamp is whatever the caller passes (empty = omitted),
// so identical inputs give identical reports.
struct AnalysisReport {
    std::string dataset_name;
    std::string version_label;
    std::string tool_version;
    std::string timestamp;

    DescriptiveStats stats;
    Loc total_loc = 0;

    LognormalParams fitted;       // MLE over the dataset sizes
    FitQuality fitted_quality;    // CDF-grid goodness of fit
    double fitted_expected_size = 0.0;

    double rule_constant = 0.0;        // expected size per program, general model
    EstimationResult total_size;       // general-model estimate vs actual total
    std::vector<RangeEstimate> ranges; // general-model counts vs actual counts

    std::vector<DefectSection> defects;  // only kinds present in the data
};

struct ReportOptions {
    std::string timestamp;
    std::vector<double> top_percents{std::begin(kDefaultTopPercents),
                                     std::end(kDefaultTopPercents)};
};

AnalysisReport build_report(const Dataset& ds, const ReportOptions& opts = {});

// Deterministic serializations: fixed field order, shortest round-trip
// number form. JSON carries the whole report; CSV carries the tabular
// sections, one `# name` block per section.
std::string report_to_json(const AnalysisReport& r);
std::string report_to_csv(const AnalysisReport& r);

// Plot emission: for each figure writes <name>.csv (data columns described
// in a leading comment) and <name>.svg next to it. Curves are thinned to at
// most 1000 points. Returns the paths written.
std::vector<std::filesystem::path> emit_plots(const Dataset& ds, const AnalysisReport& r,
                                              const std::filesystem::path& dir);

}  // namespace sizedist
