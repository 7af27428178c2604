#pragma once

#include <span>
#include <vector>

namespace msa {

// Sample Pearson product-moment correlation. Requires equal lengths >= 2;
// throws DegenerateCorrelation when either side is constant and
// ContractViolation on a length mismatch or non-finite input.
double pearson(std::span<const double> xs, std::span<const double> ys);

// 1-based ranks; tied values share the mean of the positions they occupy.
std::vector<double> fractional_ranks(std::span<const double> values);

// Pearson correlation of the fractional ranks.
double spearman(std::span<const double> xs, std::span<const double> ys);

}  // namespace msa
