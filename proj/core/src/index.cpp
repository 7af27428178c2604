#include "msa/index.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "binary_io.hpp"
#include "msa/error.hpp"
#include "msa/tokenizer.hpp"

namespace msa {

namespace fs = std::filesystem;

namespace {
constexpr std::uint64_t kIndexMagic = 0x313058444941534DULL;  // "MSAIDX01"
}

void SearchParams::validate() const {
  if (max_concepts < 1) throw DomainError("M (max concepts) must be >= 1");
  if (max_title_words < 1) throw DomainError("tau (max title words) must be >= 1");
}

void PostingsIndex::Builder::add(const ArticleRecord& article) {
  if (article.id >= docs_.size()) docs_.resize(static_cast<std::size_t>(article.id) + 1);
  PendingDoc& doc = docs_[article.id];
  if (doc.present) {
    throw ArtifactError("duplicate concept id " + std::to_string(article.id) + " ('" + article.title + "')");
  }
  doc.present = true;
  doc.title = article.title;
  doc.title_words = static_cast<std::uint32_t>(title_word_count(article.title));
  doc.body_chars = article.body_chars;

  std::map<std::string, std::uint32_t> counts;
  for (auto& t : tokenize(article.title)) ++counts[std::move(t)];
  for (auto& t : tokenize(article.body)) ++counts[std::move(t)];
  for (auto& [term, tf] : counts) postings_[term].push_back(Posting{article.id, tf});
}

PostingsIndex PostingsIndex::Builder::finish() && {
  for (std::size_t id = 0; id < docs_.size(); ++id) {
    if (!docs_[id].present) throw ArtifactError("concept ids are not dense: id " + std::to_string(id) + " missing");
  }

  PostingsIndex index;
  index.terms_.reserve(postings_.size());
  for (const auto& entry : postings_) index.terms_.push_back(entry.first);
  std::sort(index.terms_.begin(), index.terms_.end());

  const double n = static_cast<double>(docs_.size());
  index.offsets_.reserve(index.terms_.size() + 1);
  index.offsets_.push_back(0);
  index.idf_.reserve(index.terms_.size());
  for (const auto& term : index.terms_) {
    auto& list = postings_[term];
    std::sort(list.begin(), list.end(),
              [](const Posting& a, const Posting& b) { return a.concept_id < b.concept_id; });
    for (const Posting& p : list) {
      index.posting_concepts_.push_back(p.concept_id);
      index.posting_tfs_.push_back(p.tf);
    }
    index.offsets_.push_back(index.posting_concepts_.size());
    index.idf_.push_back(std::log(1.0 + n / (1.0 + static_cast<double>(list.size()))));
  }
  postings_.clear();

  index.docs_.resize(docs_.size());
  index.titles_.resize(docs_.size());
  std::vector<double> sq(docs_.size(), 0.0);
  for (std::uint32_t t = 0; t < index.terms_.size(); ++t) {
    for (auto k = index.offsets_[t]; k < index.offsets_[t + 1]; ++k) {
      const double w = index.posting_tfs_[k] * index.idf_[t];
      sq[index.posting_concepts_[k]] += w * w;
    }
  }
  for (std::size_t id = 0; id < docs_.size(); ++id) {
    index.docs_[id] = DocStats{docs_[id].title_words, docs_[id].body_chars, std::sqrt(sq[id])};
    index.titles_[id] = std::move(docs_[id].title);
  }
  docs_.clear();
  index.rebuild_lookup();
  return index;
}

PostingsIndex PostingsIndex::build(std::span<const ArticleRecord> articles) {
  Builder builder;
  for (const auto& a : articles) builder.add(a);
  return std::move(builder).finish();
}

void PostingsIndex::rebuild_lookup() {
  term_ids_.clear();
  term_ids_.reserve(terms_.size());
  for (std::uint32_t i = 0; i < terms_.size(); ++i) term_ids_.emplace(terms_[i], i);
}

std::optional<std::uint32_t> PostingsIndex::term_id(std::string_view term) const {
  const auto it = term_ids_.find(std::string(term));
  if (it == term_ids_.end()) return std::nullopt;
  return it->second;
}

std::vector<Posting> PostingsIndex::postings(std::uint32_t term_id) const {
  std::vector<Posting> out;
  for (auto k = offsets_[term_id]; k < offsets_[term_id + 1]; ++k) {
    out.push_back(Posting{posting_concepts_[k], posting_tfs_[k]});
  }
  return out;
}

std::size_t PostingsIndex::document_frequency(std::uint32_t term_id) const {
  return static_cast<std::size_t>(offsets_[term_id + 1] - offsets_[term_id]);
}

std::vector<WeightedConcept> PostingsIndex::search(std::string_view query, const SearchParams& params) const {
  params.validate();

  // Query vector over indexed terms only, in term-id order.
  std::map<std::uint32_t, std::uint32_t> query_tf;
  for (const auto& token : tokenize(query)) {
    if (auto id = term_id(token)) ++query_tf[*id];
  }
  if (query_tf.empty()) return {};

  double query_sq = 0.0;
  std::unordered_map<ConceptId, double> dots;
  for (const auto& [t, qtf] : query_tf) {
    const double qw = qtf * idf_[t];
    query_sq += qw * qw;
    for (auto k = offsets_[t]; k < offsets_[t + 1]; ++k) {
      const ConceptId c = posting_concepts_[k];
      const DocStats& d = docs_[c];
      if (d.title_words > params.max_title_words || d.body_chars < params.min_article_chars) continue;
      dots[c] += qw * (posting_tfs_[k] * idf_[t]);
    }
  }
  const double query_norm = std::sqrt(query_sq);

  std::vector<WeightedConcept> hits;
  hits.reserve(dots.size());
  for (const auto& [c, dot] : dots) {
    const double w = dot / (query_norm * docs_[c].norm);
    if (w > 0.0) hits.push_back(WeightedConcept{c, w});
  }
  const auto by_rank = [](const WeightedConcept& a, const WeightedConcept& b) {
    return a.weight != b.weight ? a.weight > b.weight : a.concept_id < b.concept_id;
  };
  if (hits.size() > params.max_concepts) {
    std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(params.max_concepts), hits.end(),
                      by_rank);
    hits.resize(params.max_concepts);
  } else {
    std::sort(hits.begin(), hits.end(), by_rank);
  }
  return hits;
}

void PostingsIndex::save(const fs::path& dir, bool force) const {
  detail::StagedDirectory staged(dir, force);
  {
    detail::BinaryWriter w(staged.path() / "index.bin");
    w.put<std::uint64_t>(kIndexMagic);
    w.put<std::uint64_t>(terms_.size());
    for (const auto& t : terms_) w.put_string(t);
    w.put_array(offsets_);
    w.put_array(posting_concepts_);
    w.put_array(posting_tfs_);
    w.put_array(idf_);
    w.put<std::uint64_t>(docs_.size());
    for (std::size_t i = 0; i < docs_.size(); ++i) {
      w.put_string(titles_[i]);
      w.put<std::uint32_t>(docs_[i].title_words);
      w.put<std::uint64_t>(docs_[i].body_chars);
      w.put<double>(docs_[i].norm);
    }
    w.close();
  }
  nlohmann::json manifest = {
      {"format", "msa-index"},
      {"version", kFormatVersion},
      {"doc_count", doc_count()},
      {"vocabulary_size", vocabulary_size()},
      {"posting_count", posting_count()},
      {"tokenizer", "unicode-alnum-lowercase"},
      {"scoring", "tfidf-cosine; tf=raw; idf=ln(1+N/(1+df))"},
  };
  detail::write_manifest(staged.path(), manifest);
  staged.commit();
}

PostingsIndex PostingsIndex::load(const fs::path& dir) {
  const auto manifest = detail::read_manifest(dir, "msa-index", kFormatVersion);
  detail::BinaryReader r(dir / "index.bin");
  if (r.get<std::uint64_t>() != kIndexMagic) throw ArtifactError("bad magic in " + (dir / "index.bin").string());

  PostingsIndex index;
  const auto vocab = r.get<std::uint64_t>();
  index.terms_.reserve(vocab);
  for (std::uint64_t i = 0; i < vocab; ++i) index.terms_.push_back(r.get_string());
  index.offsets_ = r.get_array<std::uint64_t>();
  index.posting_concepts_ = r.get_array<ConceptId>();
  index.posting_tfs_ = r.get_array<std::uint32_t>();
  index.idf_ = r.get_array<double>();
  const auto docs = r.get<std::uint64_t>();
  index.docs_.reserve(docs);
  index.titles_.reserve(docs);
  for (std::uint64_t i = 0; i < docs; ++i) {
    index.titles_.push_back(r.get_string());
    DocStats d;
    d.title_words = r.get<std::uint32_t>();
    d.body_chars = r.get<std::uint64_t>();
    d.norm = r.get<double>();
    index.docs_.push_back(d);
  }
  r.expect_end();

  const bool consistent = index.offsets_.size() == vocab + 1 && index.idf_.size() == vocab &&
                          index.posting_tfs_.size() == index.posting_concepts_.size() &&
                          index.offsets_.back() == index.posting_concepts_.size() &&
                          manifest.value("doc_count", std::uint64_t{0}) == docs &&
                          std::all_of(index.posting_concepts_.begin(), index.posting_concepts_.end(),
                                      [&](ConceptId c) { return c < docs; });
  if (!consistent) throw ArtifactError("inconsistent index artifact: " + dir.string());
  index.rebuild_lookup();
  return index;
}

}  // namespace msa
