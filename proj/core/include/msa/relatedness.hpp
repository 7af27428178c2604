#pragma once

#include <string_view>

#include "msa/conceptspace.hpp"

namespace msa {

struct RelatednessParams {
  // Cosine values at or above lambda map to 1; below it they are divided by
  // lambda. lambda = 1 leaves the cosine unchanged.
  double lambda = 0.25;

  void validate() const;  // lambda in (0, 1]
};

// Everything needed to turn text into a relatedness score.
struct PipelineParams {
  ConceptSpaceParams concept_space{};
  RelatednessParams relatedness{};

  void validate() const;
};

// Cosine of the two weight vectors aligned over the union of their concepts
// (absent concepts count as 0). An empty vector on either side gives 0.
double cosine(const ConceptVector& a, const ConceptVector& b);

// 1 if rel_cos >= lambda, rel_cos / lambda otherwise. Values outside [0, 1]
// by more than 1e-9 throw ContractViolation; smaller excursions are clamped.
double normalize(double rel_cos, const RelatednessParams& params);

struct RelatednessResult {
  double score = 0.0;
  double cosine = 0.0;
  bool first_empty = false;   // t1 produced no concepts
  bool second_empty = false;  // t2 produced no concepts

  bool covered() const { return !first_empty && !second_empty; }
};

RelatednessResult relate_vectors(const ConceptVector& a, const ConceptVector& b, const RelatednessParams& params);

RelatednessResult relate(std::string_view t1, std::string_view t2, const PostingsIndex& index, const RuleStore& rules,
                         const PipelineParams& params);

}  // namespace msa
