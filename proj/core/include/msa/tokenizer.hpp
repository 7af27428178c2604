#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace msa {

// Splits UTF-8 text into maximal runs of Unicode letters/digits, lowercased.
// No stemming, no stopwords. Invalid UTF-8 bytes act as separators.
std::vector<std::string> tokenize(std::string_view text);

// Number of Unicode code points in a UTF-8 string (invalid bytes count as one
// each).
std::size_t count_chars(std::string_view text);

// Number of whitespace-separated words, the quantity the title-length
// thresholds compare against.
std::size_t title_word_count(std::string_view title);

// Strips leading/trailing ASCII whitespace.
std::string_view trim(std::string_view s);

}  // namespace msa
