#include "sizedist/dataset.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "sizedist/errors.hpp"

namespace sizedist {

namespace {

// Splits one CSV line. Handles double-quoted fields with "" escapes; does not
// handle embedded newlines (no id in our formats contains one).
std::vector<std::string> split_fields(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == delim) {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return line;
}

std::optional<std::int64_t> parse_int(const std::string& s) {
    std::int64_t v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || s.empty()) {
        return std::nullopt;
    }
    return v;
}

std::string lower(std::string s) {
    for (char& c : s) {
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c - 'A' + 'a');
        }
    }
    return s;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
    return s.substr(b, e - b);
}

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\r\n") != std::string::npos;
}

void write_field(std::ostream& out, const std::string& s) {
    if (!needs_quoting(s)) {
        out << s;
        return;
    }
    out << '"';
    for (char c : s) {
        if (c == '"') {
            out << "\"\"";
        } else {
            out << c;
        }
    }
    out << '"';
}

}  // namespace

std::vector<Loc> sizes(const Dataset& ds) {
    std::vector<Loc> out;
    out.reserve(ds.records.size());
    for (const auto& r : ds.records) {
        out.push_back(r.loc);
    }
    return out;
}

Dataset parse_canonical_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw MissingHeaderError("empty input, expected header row");
    }
    line = strip_cr(line);
    bool with_defects = false;
    if (line == "id,loc") {
        with_defects = false;
    } else if (line == "id,loc,pre_defects,post_defects") {
        with_defects = true;
    } else {
        throw MissingHeaderError("expected header `id,loc` or `id,loc,pre_defects,post_defects`, got `" + line + "`");
    }
    const std::size_t expected_fields = with_defects ? 4 : 2;

    Dataset ds;
    std::unordered_set<std::string> seen;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) {
            continue;
        }
        auto fields = split_fields(line, ',');
        if (fields.size() != expected_fields) {
            throw BadRowError(line_no, "expected " + std::to_string(expected_fields) + " fields, got " + std::to_string(fields.size()));
        }
        ProgramRecord rec;
        rec.id = fields[0];
        if (rec.id.empty()) {
            throw BadRowError(line_no, "empty id");
        }
        const auto loc = parse_int(fields[1]);
        if (!loc) {
            throw BadRowError(line_no, "loc is not an integer: `" + fields[1] + "`");
        }
        if (*loc < 1) {
            throw BadRowError(line_no, "loc must be >= 1, got " + fields[1]);
        }
        rec.loc = *loc;
        if (with_defects) {
            for (int d = 0; d < 2; ++d) {
                const std::string& cell = fields[2 + d];
                auto& slot = d == 0 ? rec.pre_defects : rec.post_defects;
                if (cell.empty()) {
                    continue;
                }
                const auto v = parse_int(cell);
                if (!v || *v < 0) {
                    throw BadRowError(line_no, std::string(d == 0 ? "pre" : "post") + "_defects must be a non-negative integer, got `" + cell + "`");
                }
                slot = *v;
            }
        }
        if (!seen.insert(rec.id).second) {
            throw DuplicateIdError(rec.id);
        }
        ds.records.push_back(std::move(rec));
    }
    return ds;
}

Dataset load_canonical_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    Dataset ds = parse_canonical_csv(in);
    ds.name = path.filename().string();
    return ds;
}

void write_canonical_csv(const Dataset& ds, std::ostream& out) {
    bool with_defects = false;
    for (const auto& r : ds.records) {
        if (r.pre_defects || r.post_defects) {
            with_defects = true;
            break;
        }
    }
    out << (with_defects ? "id,loc,pre_defects,post_defects" : "id,loc") << '\n';
    for (const auto& r : ds.records) {
        write_field(out, r.id);
        out << ',' << r.loc;
        if (with_defects) {
            out << ',';
            if (r.pre_defects) {
                out << *r.pre_defects;
            }
            out << ',';
            if (r.post_defects) {
                out << *r.post_defects;
            }
        }
        out << '\n';
    }
}

void save_canonical_csv(const Dataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    write_canonical_csv(ds, out);
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

Dataset import_eclipse_dataset(const std::filesystem::path& file,
                               const std::string& version_label) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + file.string());
    }

    std::string header;
    if (!std::getline(in, header)) {
        throw FormatMismatchError(file.string() + ": empty file, expected a header row");
    }
    header = strip_cr(header);

    // The archive has shipped in several delimiter variants; pick whichever
    // splits the header into the most columns.
    char delim = ';';
    std::size_t best = split_fields(header, ';').size();
    for (char cand : {',', '\t'}) {
        const std::size_t n = split_fields(header, cand).size();
        if (n > best) {
            best = n;
            delim = cand;
        }
    }
    if (best < 2) {
        throw FormatMismatchError(file.string() + ": header `" + header + "` has no recognizable delimiter");
    }

    const auto names = split_fields(header, delim);
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < names.size(); ++i) {
        index.emplace(lower(trim(names[i])), i);
    }
    auto find_col = [&](std::initializer_list<const char*> candidates) -> std::optional<std::size_t> {
        for (const char* c : candidates) {
            auto it = index.find(c);
            if (it != index.end()) {
                return it->second;
            }
        }
        return std::nullopt;
    };

    const auto id_col = find_col({"filename", "file", "name", "id"});
    const auto loc_col = find_col({"tloc", "loc"});
    if (!id_col) {
        throw FormatMismatchError(file.string() + ": no filename/id column in header `" + header + "`");
    }
    if (!loc_col) {
        throw FormatMismatchError(file.string() + ": no TLOC/loc column in header `" + header + "`");
    }
    const auto plugin_col = find_col({"plugin"});
    const auto pre_col = find_col({"pre"});
    const auto post_col = find_col({"post"});

    Dataset ds;
    ds.name = file.filename().string();
    ds.version_label = version_label;
    std::unordered_set<std::string> seen;

    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) {
            continue;
        }
        auto fields = split_fields(line, delim);
        if (fields.size() != names.size()) {
            throw FormatMismatchError(file.string() + " line " + std::to_string(line_no) + ": expected " + std::to_string(names.size()) + " fields, got " + std::to_string(fields.size()));
        }
        auto cell = [&](std::size_t col) { return trim(fields[col]); };

        ProgramRecord rec;
        rec.id = cell(*id_col);
        if (plugin_col && !cell(*plugin_col).empty()) {
            // Filenames repeat across plugins, so ids are plugin-qualified.
            rec.id = cell(*plugin_col) + "/" + rec.id;
        }
        if (rec.id.empty()) {
            throw FormatMismatchError(file.string() + " line " + std::to_string(line_no) + ": empty filename");
        }

        const auto loc = parse_int(cell(*loc_col));
        if (!loc || *loc < 1) {
            throw FormatMismatchError(file.string() + " line " + std::to_string(line_no) + ": bad TLOC value `" + cell(*loc_col) + "`");
        }
        rec.loc = *loc;

        for (int d = 0; d < 2; ++d) {
            const auto& col = d == 0 ? pre_col : post_col;
            if (!col) {
                continue;
            }
            const std::string v = cell(*col);
            const auto parsed = parse_int(v);
            if (!parsed || *parsed < 0) {
                throw FormatMismatchError(file.string() + " line " + std::to_string(line_no) + ": bad " + (d == 0 ? "pre" : "post") + " defect count `" + v + "`");
            }
            (d == 0 ? rec.pre_defects : rec.post_defects) = *parsed;
        }

        if (!seen.insert(rec.id).second) {
            throw FormatMismatchError(file.string() + " line " + std::to_string(line_no) + ": duplicate filename `" + rec.id + "`");
        }
        ds.records.push_back(std::move(rec));
    }
    return ds;
}

}  // namespace sizedist
