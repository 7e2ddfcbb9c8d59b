#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hiss::text {

// ASCII-only case folding; label sets, stop sequences and URL keywords are
// all ASCII by contract.
char ascii_lower(char c);
std::string to_lower(std::string_view s);

bool iequals(std::string_view a, std::string_view b);

// Case-insensitive find, returns npos when absent.
std::size_t ifind(std::string_view haystack, std::string_view needle, std::size_t from = 0);
bool icontains(std::string_view haystack, std::string_view needle);

std::string_view trim(std::string_view s);

// Collapses every run of whitespace to a single space (leading/trailing runs
// are dropped).
std::string collapse_whitespace(std::string_view s);

std::string replace_all(std::string s, std::string_view from, std::string_view to);

std::vector<std::string_view> split_lines(std::string_view s);

bool starts_with_after_ws(std::string_view s, std::string_view prefix);

// Strips trailing whitespace plus closing punctuation (.,;:!?"') from a label
// candidate.
std::string_view strip_trailing_punct(std::string_view s);

}  // namespace hiss::text
