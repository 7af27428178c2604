#include "msa/significance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "msa/correlation.hpp"
#include "msa/error.hpp"

namespace msa {

Tails parse_tails(std::string_view name) {
  if (name == "one" || name == "1") return Tails::one;
  if (name == "two" || name == "2") return Tails::two;
  throw DomainError("unknown tails '" + std::string(name) + "' (expected one or two)");
}

double fisher_z(double r) {
  if (!(std::fabs(r) < 1.0)) throw DomainError("Fisher z undefined for |r| >= 1 (r = " + std::to_string(r) + ")");
  return std::atanh(r);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

SteigerZ steiger_z(double r12, double r13, double r23, std::size_t n, Tails tails) {
  if (n < 4) throw DomainError("Steiger's Z needs n >= 4, got " + std::to_string(n));
  if (!(std::fabs(r23) <= 1.0)) throw DomainError("r23 must be in [-1, 1], got " + std::to_string(r23));
  const double z12 = fisher_z(r12);
  const double z13 = fisher_z(r13);

  SteigerZ out;
  if (z12 == z13) {
    out.z = 0.0;
  } else {
    const double rbar = 0.5 * (r12 + r13);
    const double rbar2 = rbar * rbar;
    const double psi = r23 * (1.0 - 2.0 * rbar2) - 0.5 * rbar2 * (1.0 - 2.0 * rbar2 - r23 * r23);
    const double denom = 1.0 - rbar2;
    const double sbar = psi / (denom * denom);
    const double var_term = 2.0 - 2.0 * sbar;
    if (!(var_term > 0.0)) {
      throw DomainError("Steiger's Z undefined: the two correlations are perfectly dependent (r23 = " +
                        std::to_string(r23) + ")");
    }
    out.z = (z12 - z13) * std::sqrt(static_cast<double>(n - 3) / var_term);
  }
  const double upper = 0.5 * std::erfc(std::fabs(out.z) / std::sqrt(2.0));
  out.p = tails == Tails::one ? upper : std::min(1.0, 2.0 * upper);
  return out;
}

DependentCorrelationTest compare_methods(std::span<const double> gold, std::span<const double> scores_a,
                                         std::span<const double> scores_b, Tails tails, double alpha,
                                         bool rank_based) {
  if (gold.size() != scores_a.size() || gold.size() != scores_b.size()) {
    throw ContractViolation("gold, method A and method B score lists differ in length");
  }
  if (gold.size() < 4) throw DomainError("comparing methods needs at least 4 pairs");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must be in (0, 1)");

  const auto is_constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
  };
  if (is_constant(gold)) throw DegenerateCorrelation("gold scores have zero variance");
  if (is_constant(scores_a)) throw DegenerateCorrelation("method A scores have zero variance");
  if (is_constant(scores_b)) throw DegenerateCorrelation("method B scores have zero variance");

  const auto corr = [rank_based](std::span<const double> x, std::span<const double> y) {
    return rank_based ? spearman(x, y) : pearson(x, y);
  };
  DependentCorrelationTest t;
  t.r12 = corr(scores_a, gold);
  t.r13 = corr(scores_b, gold);
  t.r23 = corr(scores_a, scores_b);
  t.n = gold.size();
  t.tails = tails;
  t.alpha = alpha;
  t.rank_based = rank_based;
  const SteigerZ result = steiger_z(t.r12, t.r13, t.r23, t.n, tails);
  t.z = result.z;
  t.p = result.p;
  return t;
}

}  // namespace msa
