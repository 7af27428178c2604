#include "msa/miner.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "binary_io.hpp"
#include "msa/error.hpp"

namespace msa {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kRulesMagic = 0x3130534C5552534DULL;  // "MSRULS01"

struct PendingRule {
  std::vector<ConceptId> consequent;
  std::uint32_t support = 0;
};

bool passes(std::uint32_t support, std::uint32_t antecedent_count, std::uint32_t min_support, double min_confidence) {
  return support >= min_support && static_cast<double>(support) / antecedent_count >= min_confidence;
}

// Visits every size-k subset of `items` (sorted input gives sorted subsets).
template <typename Fn>
void for_each_combination(const std::vector<ConceptId>& items, std::size_t k, Fn&& fn) {
  if (k > items.size()) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<ConceptId> combo(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) combo[i] = items[idx[i]];
    fn(combo);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == items.size() - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Transaction make_transaction(std::vector<ConceptId> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return Transaction{std::move(members)};
}

TransactionSet build_transactions(std::span<const ArticleRecord> articles, const TitleResolver& resolve) {
  TransactionSet out;
  for (const auto& article : articles) {
    std::vector<ConceptId> members{article.id};
    for (const auto& title : article.see_also) {
      if (auto id = resolve(title)) {
        members.push_back(*id);
      } else {
        ++out.skipped_titles;
      }
    }
    Transaction t = make_transaction(std::move(members));
    if (t.members.size() >= 2) out.transactions.push_back(std::move(t));
  }
  return out;
}

void MiningParams::validate() const {
  if (consequent_size < 1) throw DomainError("|Y| (consequent size) must be >= 1");
  if (min_support < 1) throw DomainError("epsilon (min support) must be >= 1");
  if (!(min_confidence >= 0.0 && min_confidence <= 1.0)) throw DomainError("upsilon (min confidence) must be in [0, 1]");
}

std::uint32_t RuleStore::max_support() const {
  return supports_.empty() ? 0 : *std::max_element(supports_.begin(), supports_.end());
}

std::uint32_t RuleStore::antecedent_count(ConceptId c) const {
  return c < item_counts_.size() ? item_counts_[c] : 0;
}

std::vector<Consequent> RuleStore::lookup_consequents(ConceptId c, std::uint32_t min_support,
                                                      double min_confidence) const {
  if (min_support < params_.min_support || min_confidence < params_.min_confidence) {
    throw ContractViolation("lookup thresholds (epsilon=" + std::to_string(min_support) +
                            ", upsilon=" + std::to_string(min_confidence) +
                            ") are looser than the rule store's build thresholds (epsilon=" +
                            std::to_string(params_.min_support) + ", upsilon=" +
                            std::to_string(params_.min_confidence) + ")");
  }
  std::vector<Consequent> out;
  if (c >= item_counts_.size()) return out;
  const std::size_t k = params_.consequent_size;
  const std::uint32_t count = item_counts_[c];
  for (auto r = row_offsets_[c]; r < row_offsets_[c + 1]; ++r) {
    if (!passes(supports_[r], count, min_support, min_confidence)) continue;
    out.push_back(Consequent{std::span<const ConceptId>(consequents_.data() + r * k, k), supports_[r], count});
  }
  return out;
}

std::vector<AssociationRule> RuleStore::rules() const {
  std::vector<AssociationRule> out;
  out.reserve(rule_count());
  const std::size_t k = params_.consequent_size;
  for (ConceptId c = 0; c < item_counts_.size(); ++c) {
    for (auto r = row_offsets_[c]; r < row_offsets_[c + 1]; ++r) {
      out.push_back(AssociationRule{c,
                                    std::vector<ConceptId>(consequents_.begin() + static_cast<std::ptrdiff_t>(r * k),
                                                           consequents_.begin() + static_cast<std::ptrdiff_t>((r + 1) * k)),
                                    supports_[r], item_counts_[c]});
    }
  }
  return out;
}

RuleStore mine_rules(std::span<const Transaction> transactions, const MiningParams& params) {
  params.validate();

  std::vector<Transaction> normalized;
  normalized.reserve(transactions.size());
  ConceptId max_id = 0;
  bool any = false;
  for (const auto& t : transactions) {
    normalized.push_back(make_transaction(t.members));
    if (!normalized.back().members.empty()) {
      max_id = std::max(max_id, normalized.back().members.back());
      any = true;
    }
  }

  RuleStore store;
  store.params_ = params;
  store.transaction_count_ = normalized.size();
  const std::size_t concept_count = any ? static_cast<std::size_t>(max_id) + 1 : 0;
  store.item_counts_.assign(concept_count, 0);
  for (const auto& t : normalized) {
    for (ConceptId c : t.members) ++store.item_counts_[c];
  }

  const std::size_t k = params.consequent_size;
  std::vector<std::vector<PendingRule>> rows(concept_count);
  const auto keep = [&](ConceptId antecedent, std::uint32_t support) {
    return passes(support, store.item_counts_[antecedent], params.min_support, params.min_confidence);
  };

  if (k == 1) {
    // Unordered pair counts give the support of both directions.
    std::unordered_map<std::uint64_t, std::uint32_t> pairs;
    for (const auto& t : normalized) {
      const auto& m = t.members;
      for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
          ++pairs[(static_cast<std::uint64_t>(m[i]) << 32) | m[j]];
        }
      }
    }
    for (const auto& [key, support] : pairs) {
      const auto a = static_cast<ConceptId>(key >> 32);
      const auto b = static_cast<ConceptId>(key & 0xFFFFFFFFu);
      if (keep(a, support)) rows[a].push_back(PendingRule{{b}, support});
      if (keep(b, support)) rows[b].push_back(PendingRule{{a}, support});
    }
  } else {
    std::map<std::vector<ConceptId>, std::uint32_t> counts;  // key = antecedent, consequent...
    std::vector<ConceptId> others;
    std::vector<ConceptId> key;
    for (const auto& t : normalized) {
      for (ConceptId a : t.members) {
        others.clear();
        for (ConceptId c : t.members) {
          if (c != a) others.push_back(c);
        }
        for_each_combination(others, k, [&](const std::vector<ConceptId>& combo) {
          key.assign(1, a);
          key.insert(key.end(), combo.begin(), combo.end());
          ++counts[key];
        });
      }
    }
    for (const auto& [rule, support] : counts) {
      if (keep(rule.front(), support)) {
        rows[rule.front()].push_back(PendingRule{std::vector<ConceptId>(rule.begin() + 1, rule.end()), support});
      }
    }
  }

  store.row_offsets_.reserve(concept_count + 1);
  store.row_offsets_.push_back(0);
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(), [](const PendingRule& x, const PendingRule& y) {
      return x.support != y.support ? x.support > y.support : x.consequent < y.consequent;
    });
    for (auto& rule : row) {
      store.consequents_.insert(store.consequents_.end(), rule.consequent.begin(), rule.consequent.end());
      store.supports_.push_back(rule.support);
    }
    store.row_offsets_.push_back(store.supports_.size());
  }
  return store;
}

void RuleStore::save(const fs::path& dir, bool force) const {
  detail::StagedDirectory staged(dir, force);
  {
    detail::BinaryWriter w(staged.path() / "rules.bin");
    w.put<std::uint64_t>(kRulesMagic);
    w.put<std::uint64_t>(params_.consequent_size);
    w.put<std::uint32_t>(params_.min_support);
    w.put<double>(params_.min_confidence);
    w.put<std::uint64_t>(transaction_count_);
    w.put_array(item_counts_);
    w.put_array(row_offsets_);
    w.put_array(consequents_);
    w.put_array(supports_);
    w.close();
  }
  nlohmann::json manifest = {
      {"format", "msa-rules"},
      {"version", kFormatVersion},
      {"params",
       {{"consequent_size", params_.consequent_size},
        {"min_support", params_.min_support},
        {"min_confidence", params_.min_confidence}}},
      {"concept_count", concept_count()},
      {"transaction_count", transaction_count_},
      {"rule_count", rule_count()},
  };
  detail::write_manifest(staged.path(), manifest);
  staged.commit();
}

RuleStore RuleStore::load(const fs::path& dir) {
  const auto manifest = detail::read_manifest(dir, "msa-rules", kFormatVersion);
  detail::BinaryReader r(dir / "rules.bin");
  if (r.get<std::uint64_t>() != kRulesMagic) throw ArtifactError("bad magic in " + (dir / "rules.bin").string());

  RuleStore store;
  store.params_.consequent_size = r.get<std::uint64_t>();
  store.params_.min_support = r.get<std::uint32_t>();
  store.params_.min_confidence = r.get<double>();
  store.transaction_count_ = r.get<std::uint64_t>();
  store.item_counts_ = r.get_array<std::uint32_t>();
  store.row_offsets_ = r.get_array<std::uint64_t>();
  store.consequents_ = r.get_array<ConceptId>();
  store.supports_ = r.get_array<std::uint32_t>();
  r.expect_end();

  const auto& mp = manifest.at("params");
  const bool consistent =
      store.params_.consequent_size >= 1 && store.row_offsets_.size() == store.item_counts_.size() + 1 &&
      store.row_offsets_.back() == store.supports_.size() &&
      store.consequents_.size() == store.supports_.size() * store.params_.consequent_size &&
      mp.value("consequent_size", std::size_t{0}) == store.params_.consequent_size &&
      mp.value("min_support", std::uint32_t{0}) == store.params_.min_support &&
      mp.value("min_confidence", -1.0) == store.params_.min_confidence &&
      manifest.value("rule_count", std::size_t{0}) == store.rule_count();
  if (!consistent) throw ArtifactError("inconsistent rule store artifact: " + dir.string());
  return store;
}

}  // namespace msa
