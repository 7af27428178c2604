#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace msa {

enum class Tails { one, two };

Tails parse_tails(std::string_view name);

// artanh(r). Throws DomainError when |r| >= 1.
double fisher_z(double r);

// Standard normal CDF, computed as erfc(-x / sqrt 2) / 2 with the C library's
// erfc (correctly rounded to within a few ulp on glibc).
double normal_cdf(double x);

struct SteigerZ {
  double z = 0.0;
  double p = 0.0;
};

// Steiger (1980) test for two dependent correlations sharing one variable:
// r12 = corr(A, gold), r13 = corr(B, gold), r23 = corr(A, B), all from the
// same n observations.
//
//   rbar = (r12 + r13) / 2
//   psi  = r23 (1 - 2 rbar^2) - rbar^2 (1 - 2 rbar^2 - r23^2) / 2
//   sbar = psi / (1 - rbar^2)^2
//   Z    = (artanh r12 - artanh r13) sqrt((n - 3) / (2 - 2 sbar))
//
// The one-tailed p is the upper tail beyond |Z|; two-tailed doubles it.
// Equal r12 and r13 give Z = 0 regardless of r23. Throws DomainError for
// n < 4, |r12| or |r13| >= 1, |r23| > 1, or a vanishing variance term
// (r23 = 1 with r12 != r13).
SteigerZ steiger_z(double r12, double r13, double r23, std::size_t n, Tails tails = Tails::one);

struct DependentCorrelationTest {
  double r12 = 0.0;  // method A vs gold
  double r13 = 0.0;  // method B vs gold
  double r23 = 0.0;  // method A vs method B
  std::size_t n = 0;
  double z = 0.0;
  double p = 0.0;
  Tails tails = Tails::one;
  double alpha = 0.05;
  bool rank_based = true;

  bool significant() const { return p < alpha; }
};

// Correlates both methods with gold and with each other (Spearman when
// rank_based, Pearson otherwise) and runs steiger_z. Throws
// DegenerateCorrelation naming the constant list.
DependentCorrelationTest compare_methods(std::span<const double> gold, std::span<const double> scores_a,
                                         std::span<const double> scores_b, Tails tails = Tails::one,
                                         double alpha = 0.05, bool rank_based = true);

}  // namespace msa
