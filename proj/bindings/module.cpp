#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <utility>
#include <vector>

#include "sizedist/dataset.hpp"
#include "sizedist/defects.hpp"
#include "sizedist/distributions.hpp"
#include "sizedist/errors.hpp"
#include "sizedist/estimation.hpp"
#include "sizedist/fitting.hpp"
#include "sizedist/loc.hpp"
#include "sizedist/report.hpp"
#include "sizedist/stats.hpp"
#include "sizedist/version.hpp"

namespace py = pybind11;
using namespace sizedist;

namespace {

std::vector<CurvePoint> to_points(const std::vector<std::pair<double, double>>& xy) {
    std::vector<CurvePoint> pts;
    pts.reserve(xy.size());
    for (const auto& [x, y] : xy) {
        pts.push_back({x, y});
    }
    return pts;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "program size statistics: LOC scanning, lognormal and Weibull "
              "fitting, size estimation, defect concentration";
    m.attr("__version__") = kVersion;

    // Base registered first so the specific translators below take priority.
    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<EmptySampleError>(m, "EmptySampleError", base.ptr());
    py::register_exception<DegenerateSampleError>(m, "DegenerateSampleError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<BadRangeError>(m, "BadRangeError", base.ptr());
    py::register_exception<TooFewPointsError>(m, "TooFewPointsError", base.ptr());
    py::register_exception<UnknownLanguageError>(m, "UnknownLanguageError", base.ptr());
    py::register_exception<DecodeError>(m, "DecodeError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());
    py::register_exception<MissingHeaderError>(m, "MissingHeaderError", base.ptr());
    py::register_exception<BadRowError>(m, "BadRowError", base.ptr());
    py::register_exception<DuplicateIdError>(m, "DuplicateIdError", base.ptr());
    py::register_exception<FormatMismatchError>(m, "FormatMismatchError", base.ptr());
    py::register_exception<MissingDefectDataError>(m, "MissingDefectDataError", base.ptr());
    py::register_exception<ZeroDefectsError>(m, "ZeroDefectsError", base.ptr());

    py::class_<LognormalParams>(m, "LognormalParams")
        .def(py::init<double, double>(), py::arg("mu"), py::arg("sigma"))
        .def_readwrite("mu", &LognormalParams::mu)
        .def_readwrite("sigma", &LognormalParams::sigma)
        .def("__repr__", [](const LognormalParams& p) {
            return "LognormalParams(mu=" + std::to_string(p.mu) +
                   ", sigma=" + std::to_string(p.sigma) + ")";
        });

    py::class_<WeibullParams>(m, "WeibullParams")
        .def(py::init<double, double>(), py::arg("gamma"), py::arg("beta"))
        .def_readwrite("gamma", &WeibullParams::gamma)
        .def_readwrite("beta", &WeibullParams::beta)
        .def("__repr__", [](const WeibullParams& p) {
            return "WeibullParams(gamma=" + std::to_string(p.gamma) +
                   ", beta=" + std::to_string(p.beta) + ")";
        });

    py::class_<FitQuality>(m, "FitQuality")
        .def_readonly("r_squared", &FitQuality::r_squared)
        .def_readonly("se", &FitQuality::se)
        .def_readonly("n_points", &FitQuality::n_points);

    py::class_<WeibullFit>(m, "WeibullFit")
        .def_readonly("params", &WeibullFit::params)
        .def_readonly("quality", &WeibullFit::quality)
        .def_readonly("converged", &WeibullFit::converged)
        .def_readonly("iterations", &WeibullFit::iterations);

    py::class_<DescriptiveStats>(m, "DescriptiveStats")
        .def_readonly("n", &DescriptiveStats::n)
        .def_readonly("min", &DescriptiveStats::min)
        .def_readonly("median", &DescriptiveStats::median)
        .def_readonly("max", &DescriptiveStats::max)
        .def_readonly("mode", &DescriptiveStats::mode)
        .def_readonly("mean", &DescriptiveStats::mean)
        .def_readonly("std_dev", &DescriptiveStats::std_dev);

    py::class_<EstimationResult>(m, "EstimationResult")
        .def_readonly("estimate", &EstimationResult::estimate)
        .def_readonly("rounded", &EstimationResult::rounded)
        .def_readonly("actual", &EstimationResult::actual)
        .def_readonly("mre", &EstimationResult::mre)
        .def_readonly("acceptable", &EstimationResult::acceptable);

    py::class_<ProgramRecord>(m, "ProgramRecord")
        .def(py::init([](std::string id, Loc loc, std::optional<std::int64_t> pre,
                         std::optional<std::int64_t> post) {
                 return ProgramRecord{std::move(id), loc, pre, post};
             }),
             py::arg("id"), py::arg("loc"), py::arg("pre_defects") = py::none(),
             py::arg("post_defects") = py::none())
        .def_readwrite("id", &ProgramRecord::id)
        .def_readwrite("loc", &ProgramRecord::loc)
        .def_readwrite("pre_defects", &ProgramRecord::pre_defects)
        .def_readwrite("post_defects", &ProgramRecord::post_defects);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init([](std::string name, std::string version_label,
                         std::vector<ProgramRecord> records) {
                 return Dataset{std::move(name), std::move(version_label), std::move(records)};
             }),
             py::arg("name") = "", py::arg("version_label") = "",
             py::arg("records") = std::vector<ProgramRecord>{})
        .def_readwrite("name", &Dataset::name)
        .def_readwrite("version_label", &Dataset::version_label)
        .def_readwrite("records", &Dataset::records)
        .def("__len__", [](const Dataset& ds) { return ds.records.size(); });

    py::class_<CurvePoint>(m, "CurvePoint")
        .def_readonly("x", &CurvePoint::x)
        .def_readonly("y", &CurvePoint::y)
        .def("__repr__", [](const CurvePoint& p) {
            return "CurvePoint(x=" + std::to_string(p.x) + ", y=" + std::to_string(p.y) + ")";
        });

    py::class_<AlbergCurve>(m, "AlbergCurve")
        .def_property_readonly("kind", [](const AlbergCurve& c) {
            return std::string(defect_kind_name(c.kind));
        })
        .def_readonly("points", &AlbergCurve::points);

    py::class_<ConcentrationRow>(m, "ConcentrationRow")
        .def_readonly("top_percent", &ConcentrationRow::top_percent)
        .def_readonly("programs", &ConcentrationRow::programs)
        .def_readonly("defect_share", &ConcentrationRow::defect_share)
        .def_readonly("tie_at_cut", &ConcentrationRow::tie_at_cut);

    py::class_<ConcentrationTable>(m, "ConcentrationTable")
        .def_property_readonly("kind", [](const ConcentrationTable& t) {
            return std::string(defect_kind_name(t.kind));
        })
        .def_readonly("rows", &ConcentrationTable::rows);

    py::class_<ScanIssue>(m, "ScanIssue")
        .def_readonly("path", &ScanIssue::path)
        .def_readonly("message", &ScanIssue::message);

    py::class_<ScanResult>(m, "ScanResult")
        .def_readonly("dataset", &ScanResult::dataset)
        .def_readonly("issues", &ScanResult::issues);

    // distributions
    m.def("normal_cdf", &normal_cdf, py::arg("z"));
    m.def("lognormal_pdf", &lognormal_pdf, py::arg("x"), py::arg("params"));
    m.def("lognormal_cdf", &lognormal_cdf, py::arg("x"), py::arg("params"));
    m.def("weibull_cdf", &weibull_cdf, py::arg("x"), py::arg("params"));

    // fitting
    m.def("fit_lognormal_mle",
          [](const std::vector<double>& sizes) { return fit_lognormal_mle(sizes); },
          py::arg("sizes"));
    m.def("fit_quality_cdf",
          [](const std::vector<double>& sizes, const LognormalParams& p) {
              return fit_quality_cdf(sizes, p);
          },
          py::arg("sizes"), py::arg("params"));
    m.def("fit_quality",
          [](const std::vector<double>& actual, const std::vector<double>& predicted) {
              return fit_quality(actual, predicted);
          },
          py::arg("actual"), py::arg("predicted"));
    m.def("fit_weibull",
          [](const std::vector<std::pair<double, double>>& points) {
              return fit_weibull(to_points(points));
          },
          py::arg("points"), "Least-squares Weibull CDF fit of (x, y) points.");

    // estimation
    m.def("corpus_default_params", &corpus_default_params);
    m.def("corpus_rule_constant", &corpus_rule_constant);
    m.def("expected_program_size", &expected_program_size, py::arg("params"));
    m.def("estimate_total_size",
          [](std::int64_t n, const std::optional<LognormalParams>& p) {
              return p ? estimate_total_size(n, *p) : estimate_total_size(n);
          },
          py::arg("n_programs"), py::arg("params") = py::none());
    m.def("estimate_count_in_range",
          [](std::int64_t n, double x1, double x2, const std::optional<LognormalParams>& p) {
              return p ? estimate_count_in_range(n, x1, x2, *p)
                       : estimate_count_in_range(n, x1, x2);
          },
          py::arg("n_programs"), py::arg("x1"), py::arg("x2"), py::arg("params") = py::none());
    m.def("mre", &mre, py::arg("actual"), py::arg("estimate"));

    // descriptive statistics
    m.def("describe", [](const std::vector<Loc>& sizes) { return describe(sizes); },
          py::arg("sizes"));
    m.def("empirical_cdf",
          [](const std::vector<Loc>& szs) {
              std::vector<std::pair<Loc, double>> out;
              for (const auto& p : empirical_cdf(szs).points) {
                  out.emplace_back(p.x, p.fraction);
              }
              return out;
          },
          py::arg("sizes"), "Pairs (size, fraction of values <= size).");
    m.def("rank_size_curve",
          [](const std::vector<Loc>& szs) {
              std::vector<std::pair<std::size_t, Loc>> out;
              for (const auto& p : rank_size_curve(szs)) {
                  out.emplace_back(p.rank, p.size);
              }
              return out;
          },
          py::arg("sizes"), "Pairs (rank, size), largest size first.");

    // datasets
    m.def("parse_canonical_csv",
          [](const std::string& text) {
              std::istringstream in(text);
              return parse_canonical_csv(in);
          },
          py::arg("text"));
    m.def("load_canonical_csv",
          [](const std::string& path) { return load_canonical_csv(path); }, py::arg("path"));
    m.def("to_canonical_csv",
          [](const Dataset& ds) {
              std::ostringstream out;
              write_canonical_csv(ds, out);
              return std::move(out).str();
          },
          py::arg("dataset"));
    m.def("save_canonical_csv",
          [](const Dataset& ds, const std::string& path) { save_canonical_csv(ds, path); },
          py::arg("dataset"), py::arg("path"));
    m.def("import_eclipse_dataset",
          [](const std::string& path, const std::string& version_label) {
              return import_eclipse_dataset(path, version_label);
          },
          py::arg("path"), py::arg("version_label") = "");

    // LOC scanning
    m.def("count_loc",
          [](const std::string& content, const std::string& lang) {
              return count_loc(content, profile_by_name(lang));
          },
          py::arg("content"), py::arg("lang") = "java");
    m.def("scan_tree",
          [](const std::string& root, std::vector<std::string> include,
             std::vector<std::string> exclude, const std::string& lang, unsigned jobs) {
              ScanOptions opts;
              opts.include = std::move(include);
              opts.exclude = std::move(exclude);
              opts.language = lang;
              opts.jobs = jobs;
              return scan_tree(root, opts);
          },
          py::arg("root"), py::arg("include") = std::vector<std::string>{},
          py::arg("exclude") = std::vector<std::string>{}, py::arg("lang") = "java",
          py::arg("jobs") = 0);
    m.def("glob_match", &glob_match, py::arg("pattern"), py::arg("path"));

    // defect concentration
    m.def("alberg_curve",
          [](const Dataset& ds, const std::string& kind) {
              return alberg_curve(ds, defect_kind_from_name(kind));
          },
          py::arg("dataset"), py::arg("kind"));
    m.def("concentration_table",
          [](const Dataset& ds, const std::string& kind, const std::vector<double>& percents) {
              return concentration_table(ds, defect_kind_from_name(kind), percents);
          },
          py::arg("dataset"), py::arg("kind"),
          py::arg("percents") = std::vector<double>{std::begin(kDefaultTopPercents),
                                                    std::end(kDefaultTopPercents)});
    m.def("fit_defect_weibull", &fit_defect_weibull, py::arg("curve"));

    // reporting
    m.def("report_json",
          [](const Dataset& ds, const std::string& timestamp, const std::vector<double>& top) {
              ReportOptions opts;
              opts.timestamp = timestamp;
              opts.top_percents = top;
              return report_to_json(build_report(ds, opts));
          },
          py::arg("dataset"), py::arg("timestamp") = "",
          py::arg("top_percents") = std::vector<double>{std::begin(kDefaultTopPercents),
                                                        std::end(kDefaultTopPercents)},
          "Full analysis report as a JSON string.");
}
