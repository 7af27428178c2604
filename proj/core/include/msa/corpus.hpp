#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "msa/types.hpp"

namespace msa {

enum class CorpusFormat { jsonl, wikitext_dir };

CorpusFormat parse_corpus_format(std::string_view name);
std::string_view to_string(CorpusFormat format);

// One retained encyclopedic article; its title is the concept name.
struct ArticleRecord {
  ConceptId id = 0;
  std::string title;
  std::string body;  // plain text, excluded sections already removed
  std::size_t body_chars = 0;
  std::vector<std::string> see_also;
  bool is_redirect = false;
  std::string ns = "main";
};

struct CorpusStats {
  std::size_t article_count = 0;
  std::size_t pruned_redirects = 0;
  std::size_t pruned_namespace = 0;
  std::size_t see_also_bearing = 0;
  // Records that never became candidates: unparseable JSON lines, missing
  // title, or a title already taken by an earlier retained article.
  std::size_t malformed_records = 0;

  // Well-formed records seen; always article_count + both pruning counters.
  std::size_t records_seen() const { return article_count + pruned_redirects + pruned_namespace; }
};

using ArticleSink = std::function<void(ArticleRecord&&)>;
using WarningSink = std::function<void(std::string_view)>;

// Streams every retained article of `source` into `sink`, ids assigned in
// encounter order. Redirects and non-main namespaces are counted and
// dropped. For wikitext_dir the files of the directory are visited in
// lexicographic filename order. Throws IngestError if the source cannot be
// read. Warnings default to stderr.
CorpusStats ingest(const std::filesystem::path& source, CorpusFormat format, const ArticleSink& sink,
                   const WarningSink& warn = {});

// Materialized corpus with exact-title resolution.
class Corpus {
public:
  Corpus() = default;
  Corpus(std::vector<ArticleRecord> articles, CorpusStats stats);

  const std::vector<ArticleRecord>& articles() const { return articles_; }
  const CorpusStats& stats() const { return stats_; }
  std::size_t size() const { return articles_.size(); }

  // Exact match after trimming surrounding whitespace.
  std::optional<ConceptId> resolve(std::string_view title) const;

private:
  std::vector<ArticleRecord> articles_;
  CorpusStats stats_;
  std::unordered_map<std::string, ConceptId> by_title_;
};

Corpus load_corpus(const std::filesystem::path& source, CorpusFormat format, const WarningSink& warn = {});

// Link targets listed under "See also" headings (two or more '=' signs,
// case-insensitive), in order, up to the next heading of the same or higher
// level. "[[a|b]]" yields "a".
std::vector<std::string> extract_see_also(std::string_view raw_article_text);

// Removes the References, See also, Categories and External links sections
// (heading through to the next heading of the same or higher level).
std::string strip_excluded_sections(std::string_view text);

// Crude wikitext to plain text: drops templates, tables, tags, comments,
// file/category links; keeps link display text and heading text.
std::string wikitext_to_plain(std::string_view raw);

}  // namespace msa
