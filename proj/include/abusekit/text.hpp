#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace abusekit::text {

// ASCII-only lowercasing; multi-byte UTF-8 sequences pass through untouched.
std::string to_lower(std::string_view s);

bool is_all_digits(std::string_view s);

// Splits on ASCII whitespace, punctuation, and symbols, lowercases, and keeps
// letters, digits, and multi-byte UTF-8 runs as token characters.
// "Check #TrendingTag now!!" -> {check, trendingtag, now}
std::vector<std::string> tokenize(std::string_view s);

std::vector<std::string> whitespace_split(std::string_view s);

// Sentence boundaries are '.', '!', '?'. Empty sentences (e.g. "a.. b") are
// dropped; surrounding whitespace is trimmed.
std::vector<std::string> split_sentences(std::string_view s);

// Non-overlapping occurrences of needle in haystack.
std::size_t count_occurrences(std::string_view haystack, std::string_view needle);

}  // namespace abusekit::text
