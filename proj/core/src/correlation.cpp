#include "msa/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "msa/error.hpp"

namespace msa {

namespace {

void check_inputs(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw ContractViolation("correlation inputs differ in length (" + std::to_string(xs.size()) + " vs " +
                            std::to_string(ys.size()) + ")");
  }
  if (xs.size() < 2) throw ContractViolation("correlation needs at least 2 observations");
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(xs.begin(), xs.end(), finite) || !std::all_of(ys.begin(), ys.end(), finite)) {
    throw ContractViolation("correlation input contains a non-finite value");
  }
}

bool constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

}  // namespace

double pearson(std::span<const double> xs, std::span<const double> ys) {
  check_inputs(xs, ys);
  if (constant(xs)) throw DegenerateCorrelation("first series has zero variance");
  if (constant(ys)) throw DegenerateCorrelation("second series has zero variance");

  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> fractional_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // positions i..j-1 (0-based) share rank mean(i+1 .. j)
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  check_inputs(xs, ys);
  if (constant(xs)) throw DegenerateCorrelation("first series has all-equal values");
  if (constant(ys)) throw DegenerateCorrelation("second series has all-equal values");
  const auto rx = fractional_ranks(xs);
  const auto ry = fractional_ranks(ys);
  return pearson(rx, ry);
}

}  // namespace msa
