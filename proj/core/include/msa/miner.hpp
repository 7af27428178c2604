#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "msa/corpus.hpp"
#include "msa/types.hpp"

namespace msa {

// One "See also" transaction: the source concept plus its resolved targets.
// Members are sorted and unique.
struct Transaction {
  std::vector<ConceptId> members;

  friend bool operator==(const Transaction&, const Transaction&) = default;
};

// Sorts and deduplicates.
Transaction make_transaction(std::vector<ConceptId> members);

struct TransactionSet {
  std::vector<Transaction> transactions;
  std::size_t skipped_titles = 0;  // see-also titles that did not resolve
};

using TitleResolver = std::function<std::optional<ConceptId>(std::string_view)>;

// One transaction per article whose see-also list resolves to at least one
// concept other than itself.
TransactionSet build_transactions(std::span<const ArticleRecord> articles, const TitleResolver& resolve);

struct MiningParams {
  std::size_t consequent_size = 1;  // |Y|
  std::uint32_t min_support = 1;    // epsilon
  double min_confidence = 0.0;      // upsilon

  // Throws DomainError unless |Y| >= 1, epsilon >= 1 and upsilon in [0, 1].
  void validate() const;
};

// X => Y with |X| = 1. Support and antecedent count are exact integers;
// confidence is their ratio.
struct AssociationRule {
  ConceptId antecedent = 0;
  std::vector<ConceptId> consequent;  // sorted
  std::uint32_t support = 0;
  std::uint32_t antecedent_count = 0;

  double confidence() const { return static_cast<double>(support) / antecedent_count; }

  friend bool operator==(const AssociationRule&, const AssociationRule&) = default;
};

// A consequent reached from a looked-up antecedent. `concepts` views storage
// owned by the RuleStore.
struct Consequent {
  std::span<const ConceptId> concepts;
  std::uint32_t support = 0;
  std::uint32_t antecedent_count = 0;

  ConceptId concept_id() const { return concepts.front(); }
  double confidence() const { return static_cast<double>(support) / antecedent_count; }
};

// Immutable adjacency store: antecedent -> consequents ordered by descending
// support (equivalently descending confidence, since the antecedent count is
// shared) then ascending consequent.
class RuleStore {
public:
  RuleStore() = default;

  const MiningParams& params() const { return params_; }
  std::size_t transaction_count() const { return transaction_count_; }
  std::size_t concept_count() const { return item_counts_.size(); }
  std::size_t rule_count() const { return supports_.size(); }
  std::uint32_t max_support() const;

  // Number of transactions containing `c`.
  std::uint32_t antecedent_count(ConceptId c) const;

  // Rules c => c' with s >= min_support and f >= min_confidence, in store
  // order (descending f, descending s, ascending c'). Thresholds may only
  // tighten the build-time ones; looser values throw ContractViolation.
  std::vector<Consequent> lookup_consequents(ConceptId c, std::uint32_t min_support, double min_confidence) const;

  // Every stored rule, antecedents ascending, each row in store order.
  std::vector<AssociationRule> rules() const;

  void save(const std::filesystem::path& dir, bool force = false) const;
  static RuleStore load(const std::filesystem::path& dir);

  static constexpr int kFormatVersion = 1;

private:
  friend RuleStore mine_rules(std::span<const Transaction>, const MiningParams&);

  MiningParams params_;
  std::size_t transaction_count_ = 0;
  std::vector<std::uint32_t> item_counts_;  // per concept id
  std::vector<std::uint64_t> row_offsets_;  // size concept_count + 1, rule indices
  std::vector<ConceptId> consequents_;      // rule i at [i*|Y|, (i+1)*|Y|)
  std::vector<std::uint32_t> supports_;
};

// All rules with a single-concept antecedent, |Y| = params.consequent_size,
// s >= epsilon and f >= upsilon. Invariant to transaction order and member
// order.
RuleStore mine_rules(std::span<const Transaction> transactions, const MiningParams& params);

}  // namespace msa
