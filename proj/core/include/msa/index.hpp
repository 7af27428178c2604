#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "msa/corpus.hpp"
#include "msa/types.hpp"

namespace msa {

// Search-phase filters.
struct SearchParams {
  std::size_t min_article_chars = 5000;  // L: body_chars must be >= this
  std::size_t max_concepts = 800;        // M: at most this many concepts returned
  std::size_t max_title_words = 2;       // tau: title word count must be <= this

  // Throws DomainError when M or tau is zero.
  void validate() const;
};

struct WeightedConcept {
  ConceptId concept_id = 0;
  double weight = 0.0;

  friend bool operator==(const WeightedConcept&, const WeightedConcept&) = default;
};

struct Posting {
  ConceptId concept_id = 0;
  std::uint32_t tf = 0;
};

struct DocStats {
  std::uint32_t title_words = 0;
  std::uint64_t body_chars = 0;
  double norm = 0.0;  // Euclidean norm of the document's tf-idf vector
};

// Term -> concept inverted index over title + body. Scoring is tf-idf cosine
// with tf = raw count and idf = ln(1 + N / (1 + df)). Immutable once built,
// so concurrent searches need no locking.
class PostingsIndex {
public:
  class Builder {
  public:
    // Throws ArtifactError on a duplicate concept id.
    void add(const ArticleRecord& article);
    // Throws ArtifactError if the ids seen are not exactly 0..n-1.
    PostingsIndex finish() &&;

  private:
    struct PendingDoc {
      std::string title;
      std::uint32_t title_words = 0;
      std::uint64_t body_chars = 0;
      bool present = false;
    };
    std::unordered_map<std::string, std::vector<Posting>> postings_;
    std::vector<PendingDoc> docs_;
  };

  PostingsIndex() = default;

  static PostingsIndex build(std::span<const ArticleRecord> articles);

  std::size_t doc_count() const { return docs_.size(); }
  std::size_t vocabulary_size() const { return terms_.size(); }
  std::size_t posting_count() const { return posting_concepts_.size(); }

  std::optional<std::uint32_t> term_id(std::string_view term) const;
  const std::string& term(std::uint32_t term_id) const { return terms_[term_id]; }
  std::vector<Posting> postings(std::uint32_t term_id) const;
  std::size_t document_frequency(std::uint32_t term_id) const;
  double idf(std::uint32_t term_id) const { return idf_[term_id]; }

  const DocStats& doc(ConceptId id) const { return docs_[id]; }
  const std::string& title(ConceptId id) const { return titles_[id]; }

  // C_s: concepts passing the L and tau filters, scored by tf-idf cosine
  // against the query, top-M by descending weight, ties by ascending id.
  // A query with no indexed term yields an empty result.
  std::vector<WeightedConcept> search(std::string_view query, const SearchParams& params) const;

  // Writes <dir>/manifest.json and <dir>/index.bin via a staging directory.
  // Refuses to replace an existing artifact unless `force`.
  void save(const std::filesystem::path& dir, bool force = false) const;
  static PostingsIndex load(const std::filesystem::path& dir);

  static constexpr int kFormatVersion = 1;

private:
  void rebuild_lookup();

  std::vector<std::string> terms_;  // sorted; position is the term id
  std::unordered_map<std::string, std::uint32_t> term_ids_;
  std::vector<std::uint64_t> offsets_;  // CSR row starts, size V+1
  std::vector<ConceptId> posting_concepts_;
  std::vector<std::uint32_t> posting_tfs_;
  std::vector<double> idf_;
  std::vector<DocStats> docs_;
  std::vector<std::string> titles_;
};

}  // namespace msa
