#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "sizedist/errors.hpp"
#include "sizedist/loc.hpp"
#include "test_util.hpp"

using namespace sizedist;
using testutil::TempDir;

namespace {

Loc java_loc(std::string_view text) { return count_loc(text, java_profile()); }

}  // namespace

TEST_CASE("counting basics") {
    CHECK(java_loc("") == 0);
    CHECK(java_loc("\n\n  \n\t\n") == 0);
    CHECK(java_loc("int x;\n") == 1);
    CHECK(java_loc("int x;") == 1);  // missing final newline still a line
    CHECK(java_loc("int x;\nint y;\n") == 2);
}

TEST_CASE("line comments do not count, trailing comments do") {
    CHECK(java_loc("// all comment\n") == 0);
    CHECK(java_loc("   // indented comment\n") == 0);
    CHECK(java_loc("int x; // trailing\n") == 1);
    CHECK(java_loc("// one\n// two\nint x;\n") == 1);
    CHECK(java_loc("// no newline at end") == 0);
}

TEST_CASE("block comments span lines and share lines with code") {
    CHECK(java_loc("/* one\n * two\n */\n") == 0);
    CHECK(java_loc("int a; /* start\nstill comment\n*/ int b;\n") == 2);
    CHECK(java_loc("/* c */ int x;\n") == 1);
    CHECK(java_loc("int x; /* c */\n") == 1);
    CHECK(java_loc("/* a */ /* b */\n") == 0);
    // unterminated block swallows the rest of the file
    CHECK(java_loc("int a;\n/* runs to eof\nint b;\nint c;\n") == 1);
    // Java block comments do not nest: the first */ closes
    CHECK(java_loc("/* outer /* inner */ int x;\n") == 1);
}

TEST_CASE("string literals hide comment markers") {
    CHECK(java_loc("String s = \"// not a comment\";\n") == 1);
    CHECK(java_loc("String s = \"/* not open */\";\nint x;\n") == 2);
    CHECK(java_loc("char c = '\"'; // quote char\nint x;\n") == 2);
    CHECK(java_loc("String s = \"\\\" // still in string\";\n") == 1);
    CHECK(java_loc("String s = \"*/\"; /* real one */\n") == 1);
}

TEST_CASE("whitespace-only characters leave a line blank") {
    // ideographic space, en space, NBSP
    CHECK(java_loc("\xe3\x80\x80 \xe2\x80\x82 \xc2\xa0\n") == 0);
    CHECK(java_loc("\xe3\x80\x80x\n") == 1);
    CHECK(java_loc("\r\n\r\n") == 0);
    CHECK(java_loc("int x;\r\nint y;\r\n") == 2);
}

TEST_CASE("invalid utf-8 is rejected") {
    CHECK_THROWS_AS(java_loc("int x; \xff\n"), DecodeError);
    CHECK_THROWS_AS(java_loc("tail \xc3"), DecodeError);           // truncated sequence
    CHECK_THROWS_AS(java_loc("over \xc0\xaf\n"), DecodeError);     // overlong encoding
    CHECK_THROWS_AS(java_loc("surr \xed\xa0\x80\n"), DecodeError); // UTF-16 surrogate
    CHECK_NOTHROW(java_loc("String s = \"\xf0\x9f\x9a\x80\";\n")); // astral plane is fine
}

TEST_CASE("count is stable under appended blanks and comments") {
    const std::string base = "int a;\nint b; // x\n/* c */\nint d;\n";
    const Loc n = java_loc(base);
    CHECK(java_loc(base + "\n\n") == n);
    CHECK(java_loc(base + "// tail comment\n") == n);
    CHECK(java_loc(base + "/* tail\nblock */\n") == n);
    CHECK(java_loc(base + "int e;\n") == n + 1);
}

TEST_CASE("count never exceeds the physical line count") {
    const std::string samples[] = {
        "a\nb\nc\n", "/*\n*/\n", "x /* y\nz */ w\n", "\"s\"\n// c\n",
    };
    for (const auto& s : samples) {
        const auto physical = std::count(s.begin(), s.end(), '\n');
        CHECK(java_loc(s) <= static_cast<Loc>(physical));
    }
}

TEST_CASE("profile registry") {
    CHECK(profile_by_name("java").name == "java");
    CHECK_THROWS_AS(profile_by_name("cobol"), UnknownLanguageError);
    REQUIRE(profile_for_extension(".java") != nullptr);
    CHECK(profile_for_extension(".java")->name == "java");
    CHECK(profile_for_extension(".txt") == nullptr);
}

TEST_CASE("glob matching") {
    CHECK(glob_match("*.java", "Foo.java"));
    CHECK(glob_match("*.java", "dir/sub/Foo.java"));  // basename rule
    CHECK_FALSE(glob_match("*.java", "Foo.txt"));
    CHECK(glob_match("Foo?.java", "Foo1.java"));
    CHECK_FALSE(glob_match("Foo?.java", "Foo12.java"));
    CHECK(glob_match("src/*.java", "src/Foo.java"));
    CHECK_FALSE(glob_match("src/*.java", "src/sub/Foo.java"));  // * stays in one segment
    CHECK(glob_match("src/**/Foo.java", "src/a/b/Foo.java"));
    CHECK(glob_match("**/test/**", "a/test/b/C.java"));
    CHECK(glob_match("**", "anything/at/all.java"));
    CHECK_FALSE(glob_match("a/*.java", "b/x.java"));
}

TEST_CASE("fixture corpus counts match the recorded manifest") {
    const std::filesystem::path fixtures =
        std::filesystem::path(SIZEDIST_FIXTURE_DIR) / "java";
    const std::filesystem::path manifest =
        std::filesystem::path(SIZEDIST_FIXTURE_DIR) / "expected_loc.csv";

    std::ifstream in(manifest);
    REQUIRE(in.good());
    std::map<std::string, Loc> expected;
    std::string line;
    std::getline(in, line);  // header: path,loc
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.rfind(',');
        REQUIRE(comma != std::string::npos);
        expected[line.substr(0, comma)] = std::stoll(line.substr(comma + 1));
    }
    REQUIRE(expected.size() == 23);

    for (const auto& [rel, want] : expected) {
        const auto text = testutil::slurp(fixtures / rel);
        INFO("file: ", rel);
        CHECK(java_loc(text) == want);
    }
}

TEST_CASE("tree scan finds the corpus and reports empties as issues") {
    const std::filesystem::path fixtures =
        std::filesystem::path(SIZEDIST_FIXTURE_DIR) / "java";
    const auto result = scan_tree(fixtures);

    // records are sorted, unique, all positive
    CHECK(std::is_sorted(result.dataset.records.begin(), result.dataset.records.end(),
                         [](const auto& a, const auto& b) { return a.id < b.id; }));
    for (const auto& rec : result.dataset.records) CHECK(rec.loc >= 1);

    // every zero-LOC file shows up as an issue instead of a record
    CHECK(result.dataset.records.size() == 19);
    CHECK(result.issues.size() == 4);
    for (const auto& issue : result.issues) {
        CHECK(issue.message.find("0 LOC") != std::string::npos);
    }

    // spot-check a nested path uses forward slashes relative to the root
    const auto& recs = result.dataset.records;
    const bool found = std::any_of(recs.begin(), recs.end(), [](const auto& r) {
        return r.id == "deep/nested/pkg/Deep.java" && r.loc == 3;
    });
    CHECK(found);
}

TEST_CASE("tree scan is deterministic across worker counts") {
    const std::filesystem::path fixtures =
        std::filesystem::path(SIZEDIST_FIXTURE_DIR) / "java";
    ScanOptions serial;
    serial.jobs = 1;
    ScanOptions wide;
    wide.jobs = 4;
    const auto a = scan_tree(fixtures, serial);
    const auto b = scan_tree(fixtures, wide);
    CHECK(a.dataset.records == b.dataset.records);
    CHECK(a.issues.size() == b.issues.size());
}

TEST_CASE("tree scan respects include and exclude patterns") {
    TempDir tmp;
    tmp.file("keep/One.java", "int a;\n");
    tmp.file("keep/Two.java", "int b;\n");
    tmp.file("skip/Three.java", "int c;\n");
    tmp.file("keep/notes.txt", "not source\n");

    ScanOptions opts;
    opts.include = {"keep/**"};
    auto r = scan_tree(tmp.path, opts);
    REQUIRE(r.dataset.records.size() == 2);
    CHECK(r.dataset.records[0].id == "keep/One.java");
    CHECK(r.dataset.records[1].id == "keep/Two.java");

    ScanOptions excl;
    excl.exclude = {"Two.java", "skip/**"};
    r = scan_tree(tmp.path, excl);
    REQUIRE(r.dataset.records.size() == 1);
    CHECK(r.dataset.records[0].id == "keep/One.java");
}

TEST_CASE("tree scan flags undecodable files and keeps going") {
    TempDir tmp;
    tmp.file("Good.java", "int a;\n");
    tmp.file("Bad.java", std::string("int x; \xff\n"));
    const auto r = scan_tree(tmp.path);
    REQUIRE(r.dataset.records.size() == 1);
    CHECK(r.dataset.records[0].id == "Good.java");
    REQUIRE(r.issues.size() == 1);
    CHECK(r.issues[0].path == "Bad.java");
}

TEST_CASE("tree scan wants a directory") {
    TempDir tmp;
    const auto file = tmp.file("X.java", "int a;\n");
    CHECK_THROWS_AS(scan_tree(file), IoError);
    CHECK_THROWS_AS(scan_tree(tmp.path / "missing"), IoError);
}

TEST_CASE("unknown scan language is rejected") {
    TempDir tmp;
    ScanOptions opts;
    opts.language = "fortran";
    CHECK_THROWS_AS(scan_tree(tmp.path, opts), UnknownLanguageError);
}
