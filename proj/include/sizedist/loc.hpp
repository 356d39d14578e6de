#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sizedist/dataset.hpp"

namespace sizedist {

// Lexical description of a language, enough to tell code apart from
// comments and blanks. Profiles are data; adding a language is a new
// profile, not new scanner code.
struct BlockCommentDelimiters {
    std::string open;
    std::string close;
    bool nested = false;
};

struct StringDelimiter {
    char quote = '"';
    char escape = '\\';  // '\0' when the language has no escape character
};

struct LanguageProfile {
    std::string name;
    std::vector<std::string> line_comment_markers;
    std::vector<BlockCommentDelimiters> block_comment_delimiters;
    std::vector<StringDelimiter> string_delimiters;
    std::vector<std::string> extensions;  // with dot, e.g. ".java"
};

const LanguageProfile& java_profile();

// Profile registry. by_name throws UnknownLanguageError; for_extension
// returns nullptr when no profile claims the extension.
const LanguageProfile& profile_by_name(std::string_view name);
const LanguageProfile* profile_for_extension(std::string_view extension);

// Lines of code in one source text: physical lines containing at least one
// character that is neither whitespace nor part of a comment. A trailing
// comment after code still counts the line; comment markers inside string
// literals do not open comments; an unterminated block comment runs to end
// of file. Lines split on LF, a final fragment without newline is a line.
// Throws DecodeError if content is not valid UTF-8.
Loc count_loc(std::string_view content, const LanguageProfile& profile);

// Glob match with `*` / `?` inside a path segment and `**` across segments.
// Patterns containing no `/` are matched against the basename alone.
bool glob_match(std::string_view pattern, std::string_view path);

struct ScanIssue {
    std::string path;
    std::string message;
};

struct ScanOptions {
    std::vector<std::string> include;  // empty = every file of the language
    std::vector<std::string> exclude;
    std::string language = "java";
    unsigned jobs = 0;  // 0 = one per hardware thread
};

struct ScanResult {
    Dataset dataset;                // records sorted by id
    std::vector<ScanIssue> issues;  // unreadable / undecodable / empty files
};

// Walk root, count every matching source file, and return records keyed by
// the file's path relative to root (forward slashes). Unreadable or
// undecodable entries become issues, not aborts; files with 0 LOC are
// reported as issues and omitted from the dataset (records require loc >= 1).
// Output is deterministic for a given tree regardless of worker count.
ScanResult scan_tree(const std::filesystem::path& root, const ScanOptions& opts = {});

}  // namespace sizedist
