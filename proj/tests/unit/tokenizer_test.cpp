#include <doctest.h>

#include <string>
#include <vector>

#include "msa/tokenizer.hpp"

using msa::tokenize;
using Tokens = std::vector<std::string>;

TEST_CASE("tokenize splits on non-alphanumerics and lowercases") {
  CHECK(tokenize("").empty());
  CHECK(tokenize("Computational Linguistics") == Tokens{"computational", "linguistics"});
  CHECK(tokenize("state-of-the-art") == Tokens{"state", "of", "the", "art"});
  CHECK(tokenize("  R2-D2, C3PO!  ") == Tokens{"r2", "d2", "c3po"});
  CHECK(tokenize("...---...").empty());
}

TEST_CASE("tokenize handles UTF-8 letters") {
  CHECK(tokenize("Café ÜBER naïve") == Tokens{"café", "über", "naïve"});
  CHECK(tokenize("Zürich–Genève") == Tokens{"zürich", "genève"});
}

TEST_CASE("count_chars counts code points") {
  CHECK(msa::count_chars("") == 0);
  CHECK(msa::count_chars("abc") == 3);
  CHECK(msa::count_chars("héllo") == 5);
  CHECK(msa::count_chars("日本") == 2);
}

TEST_CASE("title_word_count is whitespace delimited") {
  CHECK(msa::title_word_count("Cat") == 1);
  CHECK(msa::title_word_count("Parse tree") == 2);
  CHECK(msa::title_word_count("  A  B C D ") == 4);
  CHECK(msa::title_word_count("Morphology (linguistics)") == 2);
  CHECK(msa::title_word_count("") == 0);
}

TEST_CASE("trim strips surrounding whitespace only") {
  CHECK(msa::trim("  a b \t\n") == "a b");
  CHECK(msa::trim("") == "");
  CHECK(msa::trim("   ") == "");
}
