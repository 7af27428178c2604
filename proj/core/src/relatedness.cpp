#include "msa/relatedness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "msa/error.hpp"

namespace msa {

namespace {
constexpr double kRangeSlack = 1e-9;
}

void RelatednessParams::validate() const {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw DomainError("lambda must be in (0, 1], got " + std::to_string(lambda));
}

void PipelineParams::validate() const {
  concept_space.validate();
  relatedness.validate();
}

double cosine(const ConceptVector& a, const ConceptVector& b) {
  if (a.empty() || b.empty()) return 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& e : ea) na += e.weight * e.weight;
  for (const auto& e : eb) nb += e.weight * e.weight;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i].concept_id == eb[j].concept_id) {
      dot += ea[i].weight * eb[j].weight;
      ++i;
      ++j;
    } else if (ea[i].concept_id < eb[j].concept_id) {
      ++i;
    } else {
      ++j;
    }
  }
  // Weights are positive, so the ratio is in [0, 1] up to rounding.
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

double normalize(double rel_cos, const RelatednessParams& params) {
  params.validate();
  if (!(rel_cos >= -kRangeSlack && rel_cos <= 1.0 + kRangeSlack)) {
    throw ContractViolation("cosine relatedness out of [0, 1]: " + std::to_string(rel_cos));
  }
  rel_cos = std::clamp(rel_cos, 0.0, 1.0);
  return rel_cos >= params.lambda ? 1.0 : rel_cos / params.lambda;
}

RelatednessResult relate_vectors(const ConceptVector& a, const ConceptVector& b, const RelatednessParams& params) {
  RelatednessResult r;
  r.first_empty = a.empty();
  r.second_empty = b.empty();
  r.cosine = cosine(a, b);
  r.score = normalize(r.cosine, params);
  return r;
}

RelatednessResult relate(std::string_view t1, std::string_view t2, const PostingsIndex& index, const RuleStore& rules,
                         const PipelineParams& params) {
  params.validate();
  const auto v1 = build_concept_vector(t1, index, rules, params.concept_space);
  const auto v2 = build_concept_vector(t2, index, rules, params.concept_space);
  return relate_vectors(v1, v2, params.relatedness);
}

}  // namespace msa
