#include "sizedist/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sizedist/dataset.hpp"
#include "sizedist/defects.hpp"
#include "sizedist/errors.hpp"
#include "sizedist/estimation.hpp"
#include "sizedist/fitting.hpp"
#include "sizedist/loc.hpp"
#include "sizedist/report.hpp"
#include "sizedist/stats.hpp"
#include "sizedist/version.hpp"

namespace sizedist {

namespace {

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

// 2-decimal percentage of a fraction, e.g. 0.0385 -> "3.85%".
std::string pct(double fraction) {
    return fixed(fraction * 100.0, 2) + "%";
}

// Shortest decimal form that parses back to the same double.
std::string exact(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string utc_now_rfc3339() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    out << content;
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

struct ScanArgs {
    std::string dir;
    std::vector<std::string> include;
    std::vector<std::string> exclude;
    std::string lang = "java";
    unsigned jobs = 0;
    std::string output;
};

int do_scan(const ScanArgs& a, std::ostream& out, std::ostream& err) {
    ScanOptions opts;
    opts.include = a.include;
    opts.exclude = a.exclude;
    opts.language = a.lang;
    opts.jobs = a.jobs;
    const ScanResult result = scan_tree(a.dir, opts);
    for (const auto& issue : result.issues) {
        err << "note: " << issue.path << ": " << issue.message << "\n";
    }
    save_canonical_csv(result.dataset, a.output);
    Loc total = 0;
    for (const auto& r : result.dataset.records) {
        total += r.loc;
    }
    out << "scanned " << result.dataset.records.size() << " files, " << total << " LOC -> "
        << a.output << "\n";
    if (!result.issues.empty()) {
        out << result.issues.size() << " file(s) skipped or unreadable (see notes)\n";
    }
    return 0;
}

int do_stats(const std::string& records, std::ostream& out) {
    const Dataset ds = load_canonical_csv(records);
    const DescriptiveStats s = describe(sizes(ds));
    out << "n        " << s.n << "\n";
    out << "min      " << s.min << "\n";
    out << "median   " << exact(s.median) << "\n";
    out << "max      " << s.max << "\n";
    out << "mode     " << s.mode << "\n";
    out << "mean     " << fixed(s.mean, 2) << "\n";
    out << "std_dev  " << fixed(s.std_dev, 2) << "\n";
    return 0;
}

int do_fit(const std::string& records, const std::string& params_out, std::ostream& out) {
    const Dataset ds = load_canonical_csv(records);
    const std::vector<Loc> locs = sizes(ds);
    const std::vector<double> as_double(locs.begin(), locs.end());
    const LognormalParams p = fit_lognormal_mle(as_double);
    const FitQuality q = fit_quality_cdf(as_double, p);

    out << "mu             " << fixed(p.mu, 4) << "\n";
    out << "sigma          " << fixed(p.sigma, 4) << "\n";
    out << "expected_size  " << fixed(expected_program_size(p), 2) << "\n";
    out << "r_squared      " << fixed(q.r_squared, 4) << "\n";
    out << "se             " << fixed(q.se, 4) << "\n";
    out << "n_points       " << q.n_points << "\n";

    if (!params_out.empty()) {
        nlohmann::ordered_json j;
        j["mu"] = p.mu;
        j["sigma"] = p.sigma;
        j["quality"] = {{"r_squared", q.r_squared}, {"se", q.se}, {"n_points", q.n_points}};
        write_file(params_out, j.dump(2) + "\n");
        out << "parameters written to " << params_out << "\n";
    }
    return 0;
}

struct ModelArgs {
    double mu = 0.0;
    double sigma = 0.0;
    bool has_mu = false;
    bool has_sigma = false;

    // nullopt = general model requested
    std::optional<LognormalParams> params() const {
        if (has_mu != has_sigma) {
            throw DomainError("--mu and --sigma must be given together");
        }
        if (!has_mu) {
            return std::nullopt;
        }
        return LognormalParams{mu, sigma};
    }
};

int do_estimate_size(std::int64_t n, const ModelArgs& m, std::optional<double> actual,
                     std::ostream& out) {
    const auto params = m.params();
    EstimationResult r = params ? estimate_total_size(n, *params) : estimate_total_size(n);
    const double per_program = params ? expected_program_size(*params) : corpus_rule_constant();
    if (actual) {
        r = with_actual(std::move(r), *actual);
    }
    out << "programs         " << n << "\n";
    out << "loc_per_program  " << exact(per_program) << "\n";
    out << "estimate         " << exact(r.estimate) << "\n";
    out << "rounded          " << exact(r.rounded) << "\n";
    if (r.actual) {
        out << "actual           " << exact(*r.actual) << "\n";
        out << "mre              " << pct(*r.mre) << "\n";
        out << "acceptable       " << (*r.acceptable ? "yes" : "no") << "\n";
    }
    return 0;
}

int do_estimate_range(std::int64_t n, double x1, double x2, const ModelArgs& m,
                      std::optional<double> actual, std::ostream& out) {
    const auto params = m.params();
    const LognormalParams p = params ? *params : corpus_default_params();
    EstimationResult r = estimate_count_in_range(n, x1, x2, p);
    if (actual) {
        r = with_actual(std::move(r), *actual);
    }
    out << "programs  " << n << "\n";
    out << "range     [" << exact(x1) << ", " << exact(x2) << "]\n";
    out << "cdf_x1    " << fixed(lognormal_cdf(x1, p), 4) << "\n";
    out << "cdf_x2    " << fixed(lognormal_cdf(x2, p), 4) << "\n";
    out << "estimate  " << exact(r.estimate) << "\n";
    out << "rounded   " << exact(r.rounded) << "\n";
    if (r.actual) {
        out << "actual      " << exact(*r.actual) << "\n";
        out << "mre         " << pct(*r.mre) << "\n";
        out << "acceptable  " << (*r.acceptable ? "yes" : "no") << "\n";
    }
    return 0;
}

struct DefectsArgs {
    std::string records;
    std::string kind = "pre";
    std::vector<double> top{std::begin(kDefaultTopPercents), std::end(kDefaultTopPercents)};
    bool fit = false;
    std::string curve_out;
    bool allow_warn = false;
};

int do_defects(const DefectsArgs& a, std::ostream& out, std::ostream& err) {
    const Dataset ds = load_canonical_csv(a.records);
    const DefectKind kind = defect_kind_from_name(a.kind);
    const ConcentrationTable table = concentration_table(ds, kind, a.top);

    out << "kind  " << defect_kind_name(kind) << "\n";
    out << "top      programs  defect_share\n";
    for (const auto& row : table.rows) {
        char line[128];
        std::snprintf(line, sizeof line, "%-8s %-9zu %s%s",
                      (exact(row.top_percent) + "%").c_str(), row.programs,
                      pct(row.defect_share).c_str(), row.tie_at_cut ? "  (tie at cut)" : "");
        out << line << "\n";
    }

    if (!a.curve_out.empty()) {
        const AlbergCurve curve = alberg_curve(ds, kind);
        std::ostringstream csv;
        csv << "# cumulative defect share vs program share (largest programs "
               "first); columns: program_fraction, defect_fraction\n";
        csv << "program_fraction,defect_fraction\n";
        for (const auto& p : curve.points) {
            csv << exact(p.x) << ',' << exact(p.y) << '\n';
        }
        write_file(a.curve_out, std::move(csv).str());
        out << "curve written to " << a.curve_out << "\n";
    }

    if (a.fit) {
        const WeibullFit fit = fit_defect_weibull(alberg_curve(ds, kind));
        out << "gamma       " << fixed(fit.params.gamma, 4) << "\n";
        out << "beta        " << fixed(fit.params.beta, 4) << "\n";
        out << "r_squared   " << fixed(fit.quality.r_squared, 4) << "\n";
        out << "se          " << fixed(fit.quality.se, 4) << "\n";
        out << "iterations  " << fit.iterations << "\n";
        out << "converged   " << (fit.converged ? "yes" : "no") << "\n";
        if (!fit.converged) {
            err << "warning: Weibull fit did not converge; parameters are the best iterate\n";
            if (!a.allow_warn) {
                return 2;
            }
        }
    }
    return 0;
}

struct ReportArgs {
    std::string records;
    std::string output;
    std::string csv_out;
    std::string plots_dir;
    std::string timestamp;
    std::string name;
    std::string version_label;
    std::vector<double> top{std::begin(kDefaultTopPercents), std::end(kDefaultTopPercents)};
    bool allow_warn = false;
};

int do_report(const ReportArgs& a, std::ostream& out, std::ostream& err) {
    Dataset ds = load_canonical_csv(a.records);
    if (!a.name.empty()) {
        ds.name = a.name;
    }
    if (!a.version_label.empty()) {
        ds.version_label = a.version_label;
    }

    ReportOptions opts;
    opts.timestamp = a.timestamp.empty() ? utc_now_rfc3339() : a.timestamp;
    opts.top_percents = a.top;
    const AnalysisReport report = build_report(ds, opts);

    write_file(a.output, report_to_json(report));
    out << "report written to " << a.output << "\n";
    if (!a.csv_out.empty()) {
        write_file(a.csv_out, report_to_csv(report));
        out << "tables written to " << a.csv_out << "\n";
    }
    if (!a.plots_dir.empty()) {
        for (const auto& path : emit_plots(ds, report, a.plots_dir)) {
            out << "plot written to " << path.string() << "\n";
        }
    }

    bool unconverged = false;
    for (const auto& section : report.defects) {
        if (section.weibull && !section.weibull->converged) {
            unconverged = true;
            err << "warning: " << defect_kind_name(section.kind)
                << "-release Weibull fit did not converge\n";
        }
    }
    if (unconverged && !a.allow_warn) {
        return 2;
    }
    return 0;
}

int do_import_eclipse(const std::string& file, const std::string& version_label,
                      const std::string& output, std::ostream& out) {
    const Dataset ds = import_eclipse_dataset(file, version_label);
    save_canonical_csv(ds, output);
    out << "imported " << ds.records.size() << " records -> " << output << "\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"program size and defect statistics"};
    app.name("sizedist");
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    ScanArgs scan_args;
    auto* scan = app.add_subcommand("scan", "count LOC per source file under a directory");
    scan->add_option("dir", scan_args.dir, "root of the source tree")->required();
    scan->add_option("--include", scan_args.include,
                     "glob a file must match (repeatable; default: all files of the language)");
    scan->add_option("--exclude", scan_args.exclude, "glob that removes matching files (repeatable)");
    scan->add_option("--lang", scan_args.lang, "language profile (default java)");
    scan->add_option("--jobs", scan_args.jobs, "worker threads (default: hardware)");
    scan->add_option("-o,--output", scan_args.output, "records CSV to write")->required();

    std::string stats_records;
    auto* stats = app.add_subcommand("stats", "descriptive statistics of program sizes");
    stats->add_option("records", stats_records, "records CSV")->required();

    std::string fit_records, fit_params_out;
    auto* fit = app.add_subcommand("fit", "fit a lognormal size model by maximum likelihood");
    fit->add_option("records", fit_records, "records CSV")->required();
    fit->add_option("--params", fit_params_out, "write fitted parameters as JSON");

    std::int64_t es_n = 0;
    ModelArgs es_model;
    std::optional<double> es_actual;
    auto* esize = app.add_subcommand("estimate-size", "estimate total size of a system");
    esize->add_option("--n", es_n, "number of programs")->required();
    esize->add_option("--mu", es_model.mu, "lognormal mu (with --sigma; default: general model)");
    esize->add_option("--sigma", es_model.sigma, "lognormal sigma (with --mu)");
    esize->add_option("--actual", es_actual, "actual total LOC, for MRE");

    std::int64_t er_n = 0;
    double er_x1 = 0.0, er_x2 = 0.0;
    ModelArgs er_model;
    std::optional<double> er_actual;
    auto* erange = app.add_subcommand("estimate-range", "estimate program count in a size range");
    erange->add_option("--n", er_n, "number of programs")->required();
    erange->add_option("--x1", er_x1, "lower size bound (exclusive in the model)")->required();
    erange->add_option("--x2", er_x2, "upper size bound")->required();
    erange->add_option("--mu", er_model.mu, "lognormal mu (with --sigma; default: general model)");
    erange->add_option("--sigma", er_model.sigma, "lognormal sigma (with --mu)");
    erange->add_option("--actual", er_actual, "actual count, for MRE");

    DefectsArgs defects_args;
    auto* defects = app.add_subcommand("defects", "defect concentration by program size");
    defects->add_option("records", defects_args.records, "records CSV with defect columns")->required();
    defects->add_option("--kind", defects_args.kind, "pre or post")->required();
    defects->add_option("--top", defects_args.top, "top percentages (default 5,10,15,20,25)")
        ->delimiter(',');
    defects->add_flag("--fit-weibull", defects_args.fit, "fit a Weibull curve to the accumulation");
    defects->add_option("--curve", defects_args.curve_out, "write the full accumulation curve CSV");
    defects->add_flag("--allow-warn", defects_args.allow_warn,
                      "exit 0 even if the fit does not converge");

    ReportArgs report_args;
    auto* report = app.add_subcommand("report", "full analysis report (JSON, optional CSV/plots)");
    report->add_option("records", report_args.records, "records CSV")->required();
    report->add_option("-o,--output", report_args.output, "report JSON path")->required();
    report->add_option("--csv", report_args.csv_out, "also write tabular sections as CSV");
    report->add_option("--plots", report_args.plots_dir, "directory for CSV+SVG plot files");
    report->add_option("--timestamp", report_args.timestamp,
                       "pin the generated_at value (default: current UTC time)");
    report->add_option("--name", report_args.name, "dataset name to record");
    report->add_option("--version-label", report_args.version_label, "dataset version label");
    report->add_option("--top", report_args.top, "top percentages for the defect tables")
        ->delimiter(',');
    report->add_flag("--allow-warn", report_args.allow_warn,
                     "exit 0 even if a fit does not converge");

    std::string imp_file, imp_label, imp_out;
    auto* imp = app.add_subcommand("import-eclipse", "convert a public Eclipse metrics file to records CSV");
    imp->add_option("file", imp_file, "per-file metrics table")->required();
    imp->add_option("--version-label", imp_label, "label to record, e.g. 2.0");
    imp->add_option("-o,--output", imp_out, "records CSV to write")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*scan) {
            return do_scan(scan_args, out, err);
        }
        if (*stats) {
            return do_stats(stats_records, out);
        }
        if (*fit) {
            return do_fit(fit_records, fit_params_out, out);
        }
        if (*esize) {
            es_model.has_mu = esize->count("--mu") > 0;
            es_model.has_sigma = esize->count("--sigma") > 0;
            return do_estimate_size(es_n, es_model, es_actual, out);
        }
        if (*erange) {
            er_model.has_mu = erange->count("--mu") > 0;
            er_model.has_sigma = erange->count("--sigma") > 0;
            return do_estimate_range(er_n, er_x1, er_x2, er_model, er_actual, out);
        }
        if (*defects) {
            return do_defects(defects_args, out, err);
        }
        if (*report) {
            return do_report(report_args, out, err);
        }
        if (*imp) {
            return do_import_eclipse(imp_file, imp_label, imp_out, out);
        }
    } catch (const DegenerateSampleError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const TooFewPointsError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace sizedist
