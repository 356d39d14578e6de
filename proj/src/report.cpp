#include "sizedist/report.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sizedist/errors.hpp"
#include "sizedist/svg.hpp"
#include "sizedist/version.hpp"

namespace sizedist {

namespace {

using ordered_json = nlohmann::ordered_json;

// Shortest decimal form that parses back to the same double.
std::string fmt_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::int64_t count_in_range(const Dataset& ds, Loc x1, Loc x2) {
    std::int64_t c = 0;
    for (const auto& r : ds.records) {
        if (r.loc >= x1 && r.loc <= x2) {
            ++c;
        }
    }
    return c;
}

ordered_json estimation_json(const EstimationResult& e) {
    ordered_json j;
    j["estimate"] = e.estimate;
    j["rounded"] = e.rounded;
    if (e.actual) {
        j["actual"] = *e.actual;
        j["mre"] = *e.mre;
        j["acceptable"] = *e.acceptable;
    }
    return j;
}

ordered_json quality_json(const FitQuality& q) {
    ordered_json j;
    j["r_squared"] = q.r_squared;
    j["se"] = q.se;
    j["n_points"] = q.n_points;
    return j;
}

void csv_estimation_row(std::ostream& out, const EstimationResult& e) {
    out << fmt_double(e.estimate) << ',' << fmt_double(e.rounded) << ',';
    if (e.actual) {
        out << fmt_double(*e.actual) << ',' << fmt_double(*e.mre) << ','
            << (*e.acceptable ? "yes" : "no");
    } else {
        out << ",,";
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << content;
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

}  // namespace

AnalysisReport build_report(const Dataset& ds, const ReportOptions& opts) {
    if (ds.records.empty()) {
        throw EmptySampleError("dataset has no records");
    }

    AnalysisReport r;
    r.dataset_name = ds.name;
    r.version_label = ds.version_label;
    r.tool_version = kVersion;
    r.timestamp = opts.timestamp;

    const std::vector<Loc> locs = sizes(ds);
    r.stats = describe(locs);
    for (Loc v : locs) {
        r.total_loc += v;
    }

    std::vector<double> as_double(locs.begin(), locs.end());
    r.fitted = fit_lognormal_mle(as_double);
    r.fitted_quality = fit_quality_cdf(as_double, r.fitted);
    r.fitted_expected_size = expected_program_size(r.fitted);

    r.rule_constant = corpus_rule_constant();
    r.total_size = with_actual(estimate_total_size(static_cast<std::int64_t>(r.stats.n)),
                               static_cast<double>(r.total_loc));

    // Size-band table in the shape of the reference study: smallest size up
    // to 64, then bands doubling up to 2048. Bands that the dataset cannot
    // populate (min too large) are skipped.
    const Loc bands[][2] = {{r.stats.min, 64}, {65, 256}, {257, 1024}, {1025, 2048}};
    for (const auto& b : bands) {
        if (!(b[0] > 0) || !(b[0] < b[1])) {
            continue;
        }
        RangeEstimate range;
        range.x1 = b[0];
        range.x2 = b[1];
        range.result = estimate_count_in_range(static_cast<std::int64_t>(r.stats.n),
                                               static_cast<double>(b[0]), static_cast<double>(b[1]));
        const auto actual = count_in_range(ds, b[0], b[1]);
        if (actual > 0) {
            range.result = with_actual(std::move(range.result), static_cast<double>(actual));
        }
        r.ranges.push_back(std::move(range));
    }

    for (DefectKind kind : {DefectKind::Pre, DefectKind::Post}) {
        AlbergCurve curve;
        try {
            curve = alberg_curve(ds, kind);
        } catch (const MissingDefectDataError&) {
            continue;
        } catch (const ZeroDefectsError&) {
            continue;
        }
        DefectSection section;
        section.kind = kind;
        const auto& rec = ds.records;
        for (const auto& record : rec) {
            section.total_defects += kind == DefectKind::Pre ? *record.pre_defects : *record.post_defects;
        }
        section.concentration = concentration_table(ds, kind, opts.top_percents);
        try {
            section.weibull = fit_defect_weibull(curve);
        } catch (const TooFewPointsError&) {
            // tiny dataset: table still reported, curve fit omitted
        }
        r.defects.push_back(std::move(section));
    }
    return r;
}

std::string report_to_json(const AnalysisReport& r) {
    ordered_json j;
    j["tool"] = {{"name", "sizedist"}, {"version", r.tool_version}};
    if (!r.timestamp.empty()) {
        j["generated_at"] = r.timestamp;
    }
    ordered_json dataset;
    dataset["name"] = r.dataset_name;
    if (!r.version_label.empty()) {
        dataset["version_label"] = r.version_label;
    }
    dataset["programs"] = r.stats.n;
    dataset["total_loc"] = r.total_loc;
    j["dataset"] = std::move(dataset);

    ordered_json stats;
    stats["n"] = r.stats.n;
    stats["min"] = r.stats.min;
    stats["median"] = r.stats.median;
    stats["max"] = r.stats.max;
    stats["mode"] = r.stats.mode;
    stats["mean"] = r.stats.mean;
    stats["std_dev"] = r.stats.std_dev;
    j["size_stats"] = std::move(stats);

    ordered_json fit;
    fit["mu"] = r.fitted.mu;
    fit["sigma"] = r.fitted.sigma;
    fit["expected_size"] = r.fitted_expected_size;
    fit["quality"] = quality_json(r.fitted_quality);
    j["lognormal_fit"] = std::move(fit);

    ordered_json total = estimation_json(r.total_size);
    total["method"] = "general-model-rule";
    total["loc_per_program"] = r.rule_constant;
    j["total_size_estimate"] = std::move(total);

    ordered_json ranges = ordered_json::array();
    for (const auto& range : r.ranges) {
        ordered_json row;
        row["x1"] = range.x1;
        row["x2"] = range.x2;
        row.update(estimation_json(range.result));
        ranges.push_back(std::move(row));
    }
    j["range_estimates"] = std::move(ranges);

    if (!r.defects.empty()) {
        ordered_json defects;
        for (const auto& section : r.defects) {
            ordered_json s;
            s["total_defects"] = section.total_defects;
            ordered_json rows = ordered_json::array();
            for (const auto& row : section.concentration.rows) {
                ordered_json jr;
                jr["top_percent"] = row.top_percent;
                jr["programs"] = row.programs;
                jr["defect_share"] = row.defect_share;
                if (row.tie_at_cut) {
                    jr["tie_at_cut"] = true;
                }
                rows.push_back(std::move(jr));
            }
            s["concentration"] = std::move(rows);
            if (section.weibull) {
                ordered_json w;
                w["gamma"] = section.weibull->params.gamma;
                w["beta"] = section.weibull->params.beta;
                w["converged"] = section.weibull->converged;
                w["iterations"] = section.weibull->iterations;
                w["quality"] = quality_json(section.weibull->quality);
                s["weibull"] = std::move(w);
            }
            defects[std::string(defect_kind_name(section.kind))] = std::move(s);
        }
        j["defects"] = std::move(defects);
    }
    return j.dump(2) + "\n";
}

std::string report_to_csv(const AnalysisReport& r) {
    std::ostringstream out;
    out << "# dataset\n";
    out << "name,version_label,programs,total_loc\n";
    out << r.dataset_name << ',' << r.version_label << ',' << r.stats.n << ',' << r.total_loc
        << '\n';

    out << "# size_stats\n";
    out << "n,min,median,max,mode,mean,std_dev\n";
    out << r.stats.n << ',' << r.stats.min << ',' << fmt_double(r.stats.median) << ','
        << r.stats.max << ',' << r.stats.mode << ',' << fmt_double(r.stats.mean) << ','
        << fmt_double(r.stats.std_dev) << '\n';

    out << "# lognormal_fit\n";
    out << "mu,sigma,expected_size,r_squared,se,n_points\n";
    out << fmt_double(r.fitted.mu) << ',' << fmt_double(r.fitted.sigma) << ','
        << fmt_double(r.fitted_expected_size) << ',' << fmt_double(r.fitted_quality.r_squared)
        << ',' << fmt_double(r.fitted_quality.se) << ',' << r.fitted_quality.n_points << '\n';

    out << "# total_size_estimate\n";
    out << "loc_per_program,estimate,rounded,actual,mre,acceptable\n";
    out << fmt_double(r.rule_constant) << ',';
    csv_estimation_row(out, r.total_size);
    out << '\n';

    out << "# range_estimates\n";
    out << "x1,x2,estimate,rounded,actual,mre,acceptable\n";
    for (const auto& range : r.ranges) {
        out << range.x1 << ',' << range.x2 << ',';
        csv_estimation_row(out, range.result);
        out << '\n';
    }

    for (const auto& section : r.defects) {
        const auto kind = defect_kind_name(section.kind);
        out << "# defects_" << kind << "\n";
        out << "top_percent,programs,defect_share,tie_at_cut\n";
        for (const auto& row : section.concentration.rows) {
            out << fmt_double(row.top_percent) << ',' << row.programs << ','
                << fmt_double(row.defect_share) << ',' << (row.tie_at_cut ? "yes" : "no") << '\n';
        }
        if (section.weibull) {
            out << "# weibull_" << kind << "\n";
            out << "gamma,beta,converged,iterations,r_squared,se\n";
            out << fmt_double(section.weibull->params.gamma) << ','
                << fmt_double(section.weibull->params.beta) << ','
                << (section.weibull->converged ? "yes" : "no") << ','
                << section.weibull->iterations << ','
                << fmt_double(section.weibull->quality.r_squared) << ','
                << fmt_double(section.weibull->quality.se) << '\n';
        }
    }
    return std::move(out).str();
}

std::vector<std::filesystem::path> emit_plots(const Dataset& ds, const AnalysisReport& r,
                                              const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create " + dir.string() + ": " + ec.message());
    }
    std::vector<std::filesystem::path> written;
    constexpr std::size_t kMaxPlotPoints = 1000;

    const std::vector<Loc> locs = sizes(ds);

    // rank vs size, log size axis
    {
        const auto curve = rank_size_curve(locs);
        std::vector<CurvePoint> pts;
        pts.reserve(curve.size());
        for (const auto& p : curve) {
            pts.push_back({static_cast<double>(p.rank), static_cast<double>(p.size)});
        }
        const auto thin = downsample_curve(pts, kMaxPlotPoints);

        std::ostringstream csv;
        csv << "# rank-ordered program sizes; columns: rank, loc\n";
        csv << "rank,loc\n";
        for (const auto& p : thin) {
            csv << fmt_double(p.x) << ',' << fmt_double(p.y) << '\n';
        }
        write_text_file(dir / "rank_size.csv", std::move(csv).str());

        ChartSpec chart;
        chart.title = "Program sizes, largest first";
        chart.x_label = "rank";
        chart.y_label = "LOC (log scale)";
        chart.log_y = true;
        chart.series.push_back({"size", thin});
        write_text_file(dir / "rank_size.svg", render_line_chart(chart));
        written.push_back(dir / "rank_size.csv");
        written.push_back(dir / "rank_size.svg");
    }

    // empirical CDF with the fitted lognormal overlaid
    {
        const auto cdf = empirical_cdf(locs);
        std::vector<CurvePoint> emp;
        emp.reserve(cdf.points.size());
        for (const auto& p : cdf.points) {
            emp.push_back({static_cast<double>(p.x), p.fraction});
        }
        const auto thin = downsample_curve(emp, kMaxPlotPoints);
        std::vector<CurvePoint> model;
        model.reserve(thin.size());
        for (const auto& p : thin) {
            model.push_back({p.x, lognormal_cdf(p.x, r.fitted)});
        }

        std::ostringstream csv;
        csv << "# empirical size CDF and fitted lognormal CDF; columns: loc, "
               "empirical, model\n";
        csv << "loc,empirical,model\n";
        for (std::size_t i = 0; i < thin.size(); ++i) {
            csv << fmt_double(thin[i].x) << ',' << fmt_double(thin[i].y) << ','
                << fmt_double(model[i].y) << '\n';
        }
        write_text_file(dir / "size_cdf.csv", std::move(csv).str());

        ChartSpec chart;
        chart.title = "Size distribution (CDF)";
        chart.x_label = "LOC (log scale)";
        chart.y_label = "P(size <= x)";
        chart.log_x = true;
        chart.series.push_back({"empirical", thin});
        chart.series.push_back({"lognormal", model});
        write_text_file(dir / "size_cdf.svg", render_line_chart(chart));
        written.push_back(dir / "size_cdf.csv");
        written.push_back(dir / "size_cdf.svg");
    }

    // one accumulation chart per available defect kind
    for (const auto& section : r.defects) {
        const auto curve = alberg_curve(ds, section.kind);
        const auto thin = downsample_curve(curve.points, kMaxPlotPoints);
        std::vector<CurvePoint> model;
        if (section.weibull) {
            model.reserve(thin.size());
            for (const auto& p : thin) {
                model.push_back({p.x, weibull_cdf(p.x, section.weibull->params)});
            }
        }

        const std::string stem = "defects_" + std::string(defect_kind_name(section.kind));
        std::ostringstream csv;
        csv << "# cumulative defect share vs program share (largest programs "
               "first); columns: program_fraction, defect_fraction";
        if (!model.empty()) {
            csv << ", weibull";
        }
        csv << "\nprogram_fraction,defect_fraction";
        if (!model.empty()) {
            csv << ",weibull";
        }
        csv << '\n';
        for (std::size_t i = 0; i < thin.size(); ++i) {
            csv << fmt_double(thin[i].x) << ',' << fmt_double(thin[i].y);
            if (!model.empty()) {
                csv << ',' << fmt_double(model[i].y);
            }
            csv << '\n';
        }
        write_text_file(dir / (stem + ".csv"), std::move(csv).str());

        ChartSpec chart;
        chart.title = std::string(defect_kind_name(section.kind)) + "-release defect accumulation";
        chart.x_label = "fraction of programs (largest first)";
        chart.y_label = "fraction of defects";
        chart.series.push_back({"observed", thin});
        if (!model.empty()) {
            chart.series.push_back({"weibull fit", model});
        }
        write_text_file(dir / (stem + ".svg"), render_line_chart(chart));
        written.push_back(dir / (stem + ".csv"));
        written.push_back(dir / (stem + ".svg"));
    }
    return written;
}

}  // namespace sizedist
