#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "sizedist/cli.hpp"
#include "test_util.hpp"

using sizedist::run_cli;
using testutil::TempDir;

namespace {

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    CliRun r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

const std::string kSampleCsv =
    "id,loc,pre_defects,post_defects\n"
    "a.java,200,6,2\n"
    "b.java,120,3,1\n"
    "c.java,80,2,1\n"
    "d.java,50,1,0\n"
    "e.java,30,1,0\n"
    "f.java,20,0,0\n"
    "g.java,10,0,0\n"
    "h.java,5,0,0\n";

}  // namespace

TEST_CASE("estimate-size reproduces the rule-of-thumb totals") {
    const auto r = run({"estimate-size", "--n", "6729", "--actual", "796941"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "loc_per_program  113.88"));
    CHECK(contains(r.out, "estimate         766298.52"));
    CHECK(contains(r.out, "rounded          766299"));
    CHECK(contains(r.out, "mre              3.85%"));
    CHECK(contains(r.out, "acceptable       yes"));

    const auto big = run({"estimate-size", "--n", "10593"});
    CHECK(big.code == 0);
    CHECK(contains(big.out, "rounded          1206331"));
    CHECK(!contains(big.out, "mre"));
}

TEST_CASE("estimate-size with explicit parameters uses the analytic mean") {
    const auto r = run({"estimate-size", "--n", "100", "--mu", "3.8277", "--sigma", "1.3472"});
    CHECK(r.code == 0);
    // full-precision mean, not the truncated rule
    CHECK(contains(r.out, "loc_per_program  113.88326357313066"));

    const auto half = run({"estimate-size", "--n", "100", "--mu", "3.8277"});
    CHECK(half.code == 1);
    CHECK(contains(half.err, "together"));
}

TEST_CASE("estimate-range reports the cdf window") {
    const auto r = run({"estimate-range", "--n", "10593", "--x1", "1024", "--x2", "2048"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "cdf_x1    0.9894"));
    CHECK(contains(r.out, "cdf_x2    0.9976"));
    CHECK(contains(r.out, "rounded   87"));

    const auto bad = run({"estimate-range", "--n", "100", "--x1", "64", "--x2", "32"});
    CHECK(bad.code == 1);
    CHECK(contains(bad.err, "error:"));
}

TEST_CASE("stats command describes a dataset") {
    TempDir tmp;
    const auto csv = tmp.file("d.csv", kSampleCsv);
    const auto r = run({"stats", csv.string()});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "n        8"));
    CHECK(contains(r.out, "min      5"));
    CHECK(contains(r.out, "median   40"));
    CHECK(contains(r.out, "max      200"));
    CHECK(contains(r.out, "mean     64.38"));
}

TEST_CASE("stats on an empty dataset is an input error") {
    TempDir tmp;
    const auto csv = tmp.file("empty.csv", "id,loc\n");
    const auto r = run({"stats", csv.string()});
    CHECK(r.code == 1);
    CHECK(contains(r.err, "empty sample"));
}

TEST_CASE("fit command prints parameters and can save them") {
    TempDir tmp;
    // a sample wide enough for the doubling grid
    std::string csv = "id,loc\n";
    for (int i = 0; i < 50; ++i) {
        csv += "p" + std::to_string(i) + "," + std::to_string(3 + i * 13) + "\n";
    }
    const auto path = tmp.file("sizes.csv", csv);
    const auto params = (tmp.path / "params.json").string();
    const auto r = run({"fit", path.string(), "--params", params});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "mu"));
    CHECK(contains(r.out, "sigma"));
    CHECK(contains(r.out, "r_squared"));
    CHECK(std::filesystem::exists(params));
    const auto saved = testutil::slurp(params);
    CHECK(contains(saved, "\"mu\""));
    CHECK(contains(saved, "\"sigma\""));
}

TEST_CASE("fit rejects a degenerate sample with the numeric exit code") {
    TempDir tmp;
    const auto csv = tmp.file("same.csv", "id,loc\na,5\nb,5\nc,5\n");
    const auto r = run({"fit", csv.string()});
    CHECK(r.code == 2);
    CHECK(contains(r.err, "error:"));
}

TEST_CASE("scan and stats compose on the fixture corpus") {
    TempDir tmp;
    const auto out_csv = (tmp.path / "scan.csv").string();
    const std::string fixtures =
        (std::filesystem::path(SIZEDIST_FIXTURE_DIR) / "java").string();
    const auto r = run({"scan", fixtures, "-o", out_csv});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "scanned 19 files"));
    CHECK(contains(r.err, "0 LOC"));  // the all-comment fixtures are noted

    // scanning twice gives byte-identical output
    const auto first = testutil::slurp(out_csv);
    const auto r2 = run({"scan", fixtures, "-o", out_csv, "--jobs", "3"});
    CHECK(r2.code == 0);
    CHECK(testutil::slurp(out_csv) == first);

    const auto st = run({"stats", out_csv});
    CHECK(st.code == 0);
    CHECK(contains(st.out, "n        19"));
}

TEST_CASE("defects command prints the concentration table") {
    TempDir tmp;
    const auto csv = tmp.file("d.csv", kSampleCsv);
    const auto r = run({"defects", csv.string(), "--kind", "pre", "--top", "25,50,100"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "kind  pre"));
    CHECK(contains(r.out, "top      programs  defect_share"));
    // top 25% of 8 programs = 2 largest, holding 9 of 13 defects
    CHECK(contains(r.out, "69.23%"));
    // everything
    CHECK(contains(r.out, "100.00%"));
}

TEST_CASE("defects command fits the accumulation curve on demand") {
    TempDir tmp;
    std::string csv = "id,loc,pre_defects,post_defects\n";
    // smooth synthetic accumulation over 60 programs
    for (int i = 0; i < 60; ++i) {
        csv += "p" + std::to_string(100 + i) + "," + std::to_string(600 - i * 10) + "," +
               std::to_string(60 - i) + ",\n";
    }
    const auto path = tmp.file("curve.csv", csv);
    const auto curve_out = (tmp.path / "curve_points.csv").string();
    const auto r = run({"defects", path.string(), "--kind", "pre", "--fit-weibull",
                        "--curve", curve_out});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "gamma"));
    CHECK(contains(r.out, "beta"));
    CHECK(contains(r.out, "converged   yes"));
    CHECK(std::filesystem::exists(curve_out));

    const auto missing = run({"defects", path.string(), "--kind", "post"});
    CHECK(missing.code == 1);  // post column is empty in this file
}

TEST_CASE("report command writes json, csv tables and plots") {
    TempDir tmp;
    std::string csv = "id,loc,pre_defects,post_defects\n";
    std::mt19937_64 seed(3);
    for (int i = 0; i < 120; ++i) {
        const long loc = 3 + static_cast<long>((seed() % 400));
        csv += "p" + std::to_string(i) + "," + std::to_string(loc) + "," +
               std::to_string(loc / 50) + "," + std::to_string(loc / 120) + "\n";
    }
    const auto data = tmp.file("data.csv", csv);
    const auto json_out = (tmp.path / "report.json").string();
    const auto csv_out = (tmp.path / "tables.csv").string();
    const auto plot_dir = (tmp.path / "plots").string();

    const auto r = run({"report", data.string(), "-o", json_out, "--csv", csv_out,
                        "--plots", plot_dir, "--name", "sample", "--timestamp",
                        "2024-01-01T00:00:00Z"});
    CHECK(r.code == 0);
    CHECK(std::filesystem::exists(json_out));
    CHECK(std::filesystem::exists(csv_out));
    CHECK(std::filesystem::exists(std::filesystem::path(plot_dir) / "rank_size.svg"));

    const auto json_text = testutil::slurp(json_out);
    CHECK(contains(json_text, "\"name\": \"sample\""));
    CHECK(contains(json_text, "\"generated_at\": \"2024-01-01T00:00:00Z\""));

    // identical invocation, identical bytes
    const auto again = run({"report", data.string(), "-o", json_out, "--csv", csv_out,
                            "--plots", plot_dir, "--name", "sample", "--timestamp",
                            "2024-01-01T00:00:00Z"});
    CHECK(again.code == 0);
    CHECK(testutil::slurp(json_out) == json_text);
}

TEST_CASE("import command converts a metrics table") {
    TempDir tmp;
    const auto src = tmp.file("metrics.csv",
                              "plugin;filename;TLOC;pre;post\n"
                              "core;A.java;120;3;1\n"
                              "ui;B.java;45;0;0\n");
    const auto out_csv = (tmp.path / "canon.csv").string();
    const auto r = run({"import-eclipse", src.string(), "--version-label", "2.0",
                        "-o", out_csv});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "imported 2 records"));
    const auto text = testutil::slurp(out_csv);
    CHECK(contains(text, "core/A.java,120,3,1"));

    const auto st = run({"stats", out_csv});
    CHECK(st.code == 0);
    CHECK(contains(st.out, "n        2"));
}

TEST_CASE("usage errors and version flag") {
    const auto unknown = run({"frobnicate"});
    CHECK(unknown.code == 1);

    const auto missing = run({"estimate-size"});
    CHECK(missing.code == 1);

    const auto version = run({"--version"});
    CHECK(version.code == 0);
    CHECK(contains(version.out, "0.1.0"));

    const auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(contains(help.out, "scan"));
    CHECK(contains(help.out, "report"));
}
