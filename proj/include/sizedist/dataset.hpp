#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sizedist {

// Physical lines of code, blanks and comment-only lines excluded.
using Loc = std::int64_t;

// One program (source file) with its size and optional defect counts.
struct ProgramRecord {
    std::string id;
    Loc loc = 0;  // >= 1 in any valid dataset
    std::optional<std::int64_t> pre_defects;
    std::optional<std::int64_t> post_defects;

    bool operator==(const ProgramRecord&) const = default;
};

struct Dataset {
    std::string name;
    std::string version_label;
    std::vector<ProgramRecord> records;

    bool operator==(const Dataset&) const = default;
};

// Sizes of all records, in record order.
std::vector<Loc> sizes(const Dataset& ds);

// Parse the canonical interchange format: header `id,loc` or
// `id,loc,pre_defects,post_defects`, one record per row, empty defect cells
// meaning "not recorded". Fields may use double-quote quoting.
// Throws MissingHeaderError, BadRowError, DuplicateIdError.
Dataset parse_canonical_csv(std::istream& in);
Dataset load_canonical_csv(const std::filesystem::path& path);

// Inverse of parse_canonical_csv. Writes the 4-column header whenever any
// record carries defect data, else the 2-column one. Round-trips exactly.
void write_canonical_csv(const Dataset& ds, std::ostream& out);
void save_canonical_csv(const Dataset& ds, const std::filesystem::path& path);

// Adapter for the published Eclipse per-file metrics tables. Accepts comma,
// semicolon or tab separated files; needs columns (case-insensitive)
// `filename` (or `file`/`name`/`id`), `TLOC` (or `loc`), and optionally
// `plugin`, `pre`, `post`. Throws FormatMismatchError naming the first
// element it cannot parse.
Dataset import_eclipse_dataset(const std::filesystem::path& file,
                               const std::string& version_label);

}  // namespace sizedist
