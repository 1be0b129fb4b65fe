#include "pnsopt/categorical.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pnsopt {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double max_weight(std::span<const double> log_weights) {
  double best = kNegInf;
  for (double w : log_weights) {
    if (w > best) best = w;
  }
  return best;
}
}  // namespace

double log_sum_exp(std::span<const double> log_weights) {
  const double m = max_weight(log_weights);
  if (m == kNegInf) return kNegInf;
  double total = 0.0;
  for (double w : log_weights) total += std::exp(w - m);
  return m + std::log(total);
}

std::size_t categorical_pick(std::span<const double> log_weights, RngStream& rng) {
  const double m = max_weight(log_weights);
  if (m == kNegInf) {
    throw std::domain_error("categorical_pick: empty support");
  }
  double total = 0.0;
  for (double w : log_weights) total += std::exp(w - m);
  const double u = rng.uniform01() * total;
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    const double mass = std::exp(log_weights[i] - m);
    if (mass > 0.0) last_positive = i;
    cumulative += mass;
    if (u < cumulative && mass > 0.0) return i;
  }
  return last_positive;  // guards the u == total rounding edge
}

std::size_t categorical_pick(std::span<const LogWeight> log_weights, RngStream& rng) {
  std::vector<double> raw(log_weights.size());
  for (std::size_t i = 0; i < log_weights.size(); ++i) raw[i] = log_weights[i].value;
  return categorical_pick(std::span<const double>(raw), rng);
}

}  // namespace pnsopt
