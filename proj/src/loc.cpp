#include "sizedist/loc.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <system_error>
#include <thread>

#include "sizedist/errors.hpp"

namespace sizedist {

namespace {

bool is_unicode_space(char32_t c) {
    switch (c) {
        case U'\t':
        case U'\n':
        case U'\v':
        case U'\f':
        case U'\r':
        case U' ':
        case 0x85:    // next line
        case 0xA0:    // no-break space
        case 0x1680:  // ogham space mark
        case 0x2028:  // line separator
        case 0x2029:  // paragraph separator
        case 0x202F:  // narrow no-break space
        case 0x205F:  // medium mathematical space
        case 0x3000:  // ideographic space
            return true;
        default:
            return c >= 0x2000 && c <= 0x200A;  // en quad .. hair space
    }
}

// Strict UTF-8 decode: rejects overlong forms, surrogates and values past
// U+10FFFF so that corrupt or binary files fail loudly.
std::u32string decode_utf8(std::string_view bytes) {
    std::u32string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    while (i < bytes.size()) {
        const auto b0 = static_cast<unsigned char>(bytes[i]);
        std::size_t len;
        char32_t cp;
        char32_t min_cp;
        if (b0 < 0x80) {
            out.push_back(b0);
            ++i;
            continue;
        } else if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
            min_cp = 0x80;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
            min_cp = 0x800;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
            min_cp = 0x10000;
        } else {
            throw DecodeError("invalid UTF-8 lead byte at offset " + std::to_string(i));
        }
        if (i + len > bytes.size()) {
            throw DecodeError("truncated UTF-8 sequence at offset " + std::to_string(i));
        }
        for (std::size_t k = 1; k < len; ++k) {
            const auto b = static_cast<unsigned char>(bytes[i + k]);
            if ((b & 0xC0) != 0x80) {
                throw DecodeError("invalid UTF-8 continuation at offset " + std::to_string(i + k));
            }
            cp = (cp << 6) | (b & 0x3F);
        }
        if (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            throw DecodeError("invalid UTF-8 code point at offset " + std::to_string(i));
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

bool matches_at(const std::u32string& text, std::size_t pos, const std::string& token) {
    if (pos + token.size() > text.size()) {
        return false;
    }
    for (std::size_t k = 0; k < token.size(); ++k) {
        if (text[pos + k] != static_cast<char32_t>(static_cast<unsigned char>(token[k]))) {
            return false;
        }
    }
    return true;
}

// Matches one glob segment (no '/', '*' and '?' wildcards) by backtracking.
bool segment_match(std::string_view pat, std::string_view seg) {
    std::size_t p = 0, s = 0;
    std::size_t star_p = std::string_view::npos, star_s = 0;
    while (s < seg.size()) {
        if (p < pat.size() && (pat[p] == seg[s] || pat[p] == '?')) {
            ++p;
            ++s;
        } else if (p < pat.size() && pat[p] == '*') {
            star_p = p++;
            star_s = s;
        } else if (star_p != std::string_view::npos) {
            p = star_p + 1;
            s = ++star_s;
        } else {
            return false;
        }
    }
    while (p < pat.size() && pat[p] == '*') {
        ++p;
    }
    return p == pat.size();
}

std::vector<std::string_view> split_segments(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == '/') {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

bool segments_match(const std::vector<std::string_view>& pat, std::size_t pi,
                    const std::vector<std::string_view>& path, std::size_t si) {
    while (pi < pat.size()) {
        if (pat[pi] == "**") {
            // consume zero or more path segments
            for (std::size_t skip = si; skip <= path.size(); ++skip) {
                if (segments_match(pat, pi + 1, path, skip)) {
                    return true;
                }
            }
            return false;
        }
        if (si >= path.size() || !segment_match(pat[pi], path[si])) {
            return false;
        }
        ++pi;
        ++si;
    }
    return si == path.size();
}

std::string basename_of(std::string_view path) {
    const auto slash = path.rfind('/');
    return std::string(slash == std::string_view::npos ? path : path.substr(slash + 1));
}

bool matches_any(const std::vector<std::string>& globs, const std::string& rel) {
    for (const auto& g : globs) {
        if (glob_match(g, rel)) {
            return true;
        }
    }
    return false;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + p.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("read failed: " + p.string());
    }
    return std::move(buf).str();
}

}  // namespace

const LanguageProfile& java_profile() {
    static const LanguageProfile profile{
        .name = "java",
        .line_comment_markers = {"//"},
        .block_comment_delimiters = {{.open = "/*", .close = "*/", .nested = false}},
        .string_delimiters = {{.quote = '"', .escape = '\\'}, {.quote = '\'', .escape = '\\'}},
        .extensions = {".java"},
    };
    return profile;
}

const LanguageProfile& profile_by_name(std::string_view name) {
    if (name == "java") {
        return java_profile();
    }
    throw UnknownLanguageError("no language profile named `" + std::string(name) + "`");
}

const LanguageProfile* profile_for_extension(std::string_view extension) {
    for (const LanguageProfile* p : {&java_profile()}) {
        for (const auto& ext : p->extensions) {
            if (ext == extension) {
                return p;
            }
        }
    }
    return nullptr;
}

Loc count_loc(std::string_view content, const LanguageProfile& profile) {
    const std::u32string text = decode_utf8(content);

    enum class State { Code, LineComment, Block, Str };
    State state = State::Code;
    const BlockCommentDelimiters* block = nullptr;
    int block_depth = 0;
    const StringDelimiter* str = nullptr;

    Loc loc = 0;
    bool has_code = false;
    bool line_started = false;

    auto end_line = [&] {
        if (has_code) {
            ++loc;
        }
        has_code = false;
        line_started = false;
        if (state == State::LineComment || state == State::Str) {
            // line comments end at the newline; an unterminated string
            // cannot span lines in the languages modeled here
            state = State::Code;
            str = nullptr;
        }
    };

    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        const char32_t c = text[i];
        if (c == U'\n') {
            end_line();
            ++i;
            continue;
        }
        line_started = true;

        switch (state) {
            case State::Code: {
                bool advanced = false;
                for (const auto& b : profile.block_comment_delimiters) {
                    if (matches_at(text, i, b.open)) {
                        state = State::Block;
                        block = &b;
                        block_depth = 1;
                        i += b.open.size();
                        advanced = true;
                        break;
                    }
                }
                if (advanced) {
                    break;
                }
                for (const auto& m : profile.line_comment_markers) {
                    if (matches_at(text, i, m)) {
                        state = State::LineComment;
                        i += m.size();
                        advanced = true;
                        break;
                    }
                }
                if (advanced) {
                    break;
                }
                for (const auto& s : profile.string_delimiters) {
                    if (c == static_cast<char32_t>(static_cast<unsigned char>(s.quote))) {
                        state = State::Str;
                        str = &s;
                        has_code = true;
                        ++i;
                        advanced = true;
                        break;
                    }
                }
                if (advanced) {
                    break;
                }
                if (!is_unicode_space(c)) {
                    has_code = true;
                }
                ++i;
                break;
            }
            case State::LineComment:
                ++i;
                break;
            case State::Block:
                if (block->nested && matches_at(text, i, block->open)) {
                    ++block_depth;
                    i += block->open.size();
                } else if (matches_at(text, i, block->close)) {
                    i += block->close.size();
                    if (--block_depth == 0) {
                        state = State::Code;
                        block = nullptr;
                    }
                } else {
                    ++i;
                }
                break;
            case State::Str:
                has_code = true;
                if (str->escape != '\0' && c == static_cast<char32_t>(static_cast<unsigned char>(str->escape))) {
                    // skip the escaped character unless it is the newline,
                    // which still terminates the line
                    if (i + 1 < n && text[i + 1] != U'\n') {
                        i += 2;
                    } else {
                        ++i;
                    }
                } else if (c == static_cast<char32_t>(static_cast<unsigned char>(str->quote))) {
                    state = State::Code;
                    str = nullptr;
                    ++i;
                } else {
                    ++i;
                }
                break;
        }
    }
    if (line_started) {
        end_line();
    }
    return loc;
}

bool glob_match(std::string_view pattern, std::string_view path) {
    if (pattern.find('/') == std::string_view::npos) {
        return segment_match(pattern, basename_of(path));
    }
    return segments_match(split_segments(pattern), 0, split_segments(path), 0);
}

ScanResult scan_tree(const std::filesystem::path& root, const ScanOptions& opts) {
    std::error_code ec;
    if (!std::filesystem::is_directory(root, ec)) {
        throw IoError("not a directory: " + root.string());
    }
    const LanguageProfile& profile = profile_by_name(opts.language);

    ScanResult result;
    result.dataset.name = root.filename().string();

    // Phase 1: walk the tree single-threaded, collecting candidate files and
    // traversal errors. Directories we cannot enter become issues.
    std::vector<std::pair<std::string, std::filesystem::path>> files;  // rel id, abs path
    std::vector<std::filesystem::path> stack{root};
    while (!stack.empty()) {
        const std::filesystem::path dir = stack.back();
        stack.pop_back();
        std::filesystem::directory_iterator it(dir, ec);
        if (ec) {
            result.issues.push_back({dir.string(), "cannot read directory: " + ec.message()});
            continue;
        }
        for (const auto& entry : it) {
            std::error_code tec;
            if (entry.is_directory(tec)) {
                if (!entry.is_symlink(tec)) {  // do not follow directory links (cycles)
                    stack.push_back(entry.path());
                }
                continue;
            }
            if (tec) {
                result.issues.push_back({entry.path().string(), "cannot stat: " + tec.message()});
                continue;
            }
            if (!entry.is_regular_file(tec)) {
                continue;
            }
            const std::string ext = entry.path().extension().string();
            if (profile_for_extension(ext) != &profile) {
                continue;
            }
            const std::string rel = entry.path().lexically_relative(root).generic_string();
            if (!opts.include.empty() && !matches_any(opts.include, rel)) {
                continue;
            }
            if (matches_any(opts.exclude, rel)) {
                continue;
            }
            files.emplace_back(rel, entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::sort(result.issues.begin(), result.issues.end(),
              [](const ScanIssue& a, const ScanIssue& b) { return a.path < b.path; });

    // Phase 2: count in parallel. Results land in per-file slots, so the
    // output cannot depend on scheduling.
    struct Slot {
        Loc loc = -1;
        std::string error;
    };
    std::vector<Slot> slots(files.size());
    unsigned jobs = opts.jobs != 0 ? opts.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, files.empty() ? 1 : static_cast<unsigned>(files.size()));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= files.size()) {
                return;
            }
            try {
                const std::string content = read_file(files[idx].second);
                slots[idx].loc = count_loc(content, profile);
            } catch (const Error& e) {
                slots[idx].error = e.what();
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned t = 0; t < jobs; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    for (std::size_t idx = 0; idx < files.size(); ++idx) {
        const auto& [rel, abs] = files[idx];
        if (!slots[idx].error.empty()) {
            result.issues.push_back({rel, slots[idx].error});
        } else if (slots[idx].loc == 0) {
            result.issues.push_back({rel, "0 LOC (blank or all comments), omitted"});
        } else {
            result.dataset.records.push_back({rel, slots[idx].loc, std::nullopt, std::nullopt});
        }
    }
    return result;
}

}  // namespace sizedist
