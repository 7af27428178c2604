#include "msa/conceptspace.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <json.hpp>

#include "msa/error.hpp"

namespace msa {

namespace {

bool heavier(const ConceptEntry& a, const ConceptEntry& b) {
  return a.weight != b.weight ? a.weight > b.weight : a.concept_id < b.concept_id;
}

}  // namespace

std::string_view to_string(ConceptKind kind) {
  return kind == ConceptKind::explicit_concept ? "explicit" : "latent";
}

ConceptVector::ConceptVector(std::vector<ConceptEntry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const ConceptEntry& a, const ConceptEntry& b) { return a.concept_id < b.concept_id; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!(entries_[i].weight > 0.0) || !std::isfinite(entries_[i].weight)) {
      throw ContractViolation("concept vector weight must be positive and finite (concept " +
                              std::to_string(entries_[i].concept_id) + ")");
    }
    if (i > 0 && entries_[i - 1].concept_id == entries_[i].concept_id) {
      throw ContractViolation("duplicate concept " + std::to_string(entries_[i].concept_id) + " in concept vector");
    }
  }
}

const ConceptEntry* ConceptVector::find(ConceptId id) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                                   [](const ConceptEntry& e, ConceptId v) { return e.concept_id < v; });
  return it != entries_.end() && it->concept_id == id ? &*it : nullptr;
}

std::vector<ConceptEntry> ConceptVector::by_weight() const {
  std::vector<ConceptEntry> out(entries_.begin(), entries_.end());
  std::sort(out.begin(), out.end(), heavier);
  return out;
}

ConceptVector ConceptVector::scaled(double factor) const {
  std::vector<ConceptEntry> out(entries_.begin(), entries_.end());
  for (auto& e : out) e.weight *= factor;
  return ConceptVector(std::move(out));
}

void ConceptSpaceParams::validate() const {
  search.validate();
  if (max_latent_title_words < 1) throw DomainError("tau_p (max latent title words) must be >= 1");
  if (min_support < 1) throw DomainError("epsilon (min support) must be >= 1");
  if (!(min_confidence >= 0.0 && min_confidence <= 1.0)) throw DomainError("upsilon (min confidence) must be in [0, 1]");
}

std::vector<WeightedConcept> expand(std::span<const WeightedConcept> explicit_concepts, const RuleStore& rules,
                                    std::uint32_t min_support, double min_confidence,
                                    std::size_t max_latent_title_words, const TitleWordsLookup& title_words) {
  std::unordered_map<ConceptId, double> best;
  for (const auto& source : explicit_concepts) {
    for (const auto& consequent : rules.lookup_consequents(source.concept_id, min_support, min_confidence)) {
      for (ConceptId implied : consequent.concepts) {
        if (title_words(implied) > max_latent_title_words) continue;
        auto [it, inserted] = best.try_emplace(implied, source.weight);
        if (!inserted) it->second = std::max(it->second, source.weight);
      }
    }
  }
  std::vector<WeightedConcept> out;
  out.reserve(best.size());
  for (const auto& [id, w] : best) out.push_back(WeightedConcept{id, w});
  std::sort(out.begin(), out.end(), [](const WeightedConcept& a, const WeightedConcept& b) {
    return a.weight != b.weight ? a.weight > b.weight : a.concept_id < b.concept_id;
  });
  return out;
}

ConceptVector merge_concepts(std::span<const WeightedConcept> explicit_concepts,
                             std::span<const WeightedConcept> latent_concepts) {
  std::unordered_map<ConceptId, ConceptEntry> merged;
  for (const auto& c : explicit_concepts) {
    merged.emplace(c.concept_id, ConceptEntry{c.concept_id, c.weight, ConceptKind::explicit_concept});
  }
  for (const auto& c : latent_concepts) {
    auto [it, inserted] =
        merged.try_emplace(c.concept_id, ConceptEntry{c.concept_id, c.weight, ConceptKind::latent_concept});
    if (!inserted && it->second.kind == ConceptKind::latent_concept) {
      it->second.weight = std::max(it->second.weight, c.weight);
    }
  }
  std::vector<ConceptEntry> entries;
  entries.reserve(merged.size());
  for (auto& [id, e] : merged) entries.push_back(e);
  return ConceptVector(std::move(entries));
}

ConceptVector build_concept_vector(std::string_view text, const PostingsIndex& index, const RuleStore& rules,
                                   const ConceptSpaceParams& params) {
  params.validate();
  const auto explicit_concepts = index.search(text, params.search);
  if (explicit_concepts.empty()) return {};
  const auto latent_concepts =
      expand(explicit_concepts, rules, params.min_support, params.min_confidence, params.max_latent_title_words,
             [&](ConceptId c) -> std::size_t {
               if (c >= index.doc_count()) {
                 throw ArtifactError("rule store references concept " + std::to_string(c) +
                                     " beyond the index (" + std::to_string(index.doc_count()) + " documents)");
               }
               return index.doc(c).title_words;
             });
  return merge_concepts(explicit_concepts, latent_concepts);
}

std::string concept_vector_json(std::string_view text, const ConceptVector& vector, const PostingsIndex& index,
                                int indent) {
  nlohmann::ordered_json concepts = nlohmann::ordered_json::array();
  for (const auto& e : vector.by_weight()) {
    concepts.push_back({{"title", index.title(e.concept_id)}, {"weight", e.weight}, {"kind", std::string(to_string(e.kind))}});
  }
  nlohmann::ordered_json doc = {{"text", std::string(text)}, {"concepts", std::move(concepts)}};
  return doc.dump(indent);
}

}  // namespace msa
