#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "msa/index.hpp"
#include "msa/miner.hpp"
#include "msa/types.hpp"

namespace msa {

enum class ConceptKind { explicit_concept, latent_concept };

std::string_view to_string(ConceptKind kind);

struct ConceptEntry {
  ConceptId concept_id = 0;
  double weight = 0.0;
  ConceptKind kind = ConceptKind::explicit_concept;

  friend bool operator==(const ConceptEntry&, const ConceptEntry&) = default;
};

// Bag-of-concepts vector. Entries are kept sorted by concept id, every
// weight is strictly positive and every entry records whether it came from
// search (explicit) or rule expansion (latent).
class ConceptVector {
public:
  ConceptVector() = default;
  // Throws ContractViolation on a duplicate id or a non-positive weight.
  explicit ConceptVector(std::vector<ConceptEntry> entries);

  std::span<const ConceptEntry> entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  const ConceptEntry* find(ConceptId id) const;
  std::vector<ConceptEntry> by_weight() const;  // descending weight, then ascending id
  ConceptVector scaled(double factor) const;

private:
  std::vector<ConceptEntry> entries_;
};

// Thresholds for building C_t. Search filters apply to C_s; tau_p, epsilon
// and upsilon govern the expansion into C_p.
struct ConceptSpaceParams {
  SearchParams search{};
  std::size_t max_latent_title_words = 3;  // tau_p
  std::uint32_t min_support = 1;           // epsilon
  double min_confidence = 0.0;             // upsilon

  void validate() const;
};

using TitleWordsLookup = std::function<std::size_t(ConceptId)>;

// C_p: every consequent of a rule c => c' (c in C_s) meeting epsilon and
// upsilon and with at most tau_p title words, carrying c's weight. A concept
// implied by several antecedents keeps the largest weight. Result is ordered
// by descending weight then ascending id.
std::vector<WeightedConcept> expand(std::span<const WeightedConcept> explicit_concepts, const RuleStore& rules,
                                    std::uint32_t min_support, double min_confidence,
                                    std::size_t max_latent_title_words, const TitleWordsLookup& title_words);

// C_t = C_s union C_p; an explicit entry keeps its search weight when the
// same concept is also implied.
ConceptVector merge_concepts(std::span<const WeightedConcept> explicit_concepts,
                             std::span<const WeightedConcept> latent_concepts);

ConceptVector build_concept_vector(std::string_view text, const PostingsIndex& index, const RuleStore& rules,
                                   const ConceptSpaceParams& params);

// {"text": ..., "concepts": [{"title", "weight", "kind"}]} by descending weight.
std::string concept_vector_json(std::string_view text, const ConceptVector& vector, const PostingsIndex& index,
                                int indent = 2);

}  // namespace msa
