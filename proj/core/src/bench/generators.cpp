#include "pnsopt/bench/generators.hpp"

#include "pnsopt/errors.hpp"

namespace pnsopt {

QuboInstance generate_qubo(std::size_t n, RngStream& rng, bool include_diagonal) {
  if (n == 0) throw config_error("generate_qubo: dimension must be positive");
  QuboInstance inst;
  inst.n = n;
  inst.upper.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const bool diagonal = i == j;
      if (diagonal && !include_diagonal) {
        rng.normal(0.0, 100.0);  // keep the draw sequence aligned across both layouts
        inst.upper.push_back(0.0);
        continue;
      }
      inst.upper.push_back(rng.normal(0.0, 100.0));
    }
  }
  inst.validate();
  return inst;
}

KnapsackInstance generate_knapsack(std::size_t n, double capacity, RngStream& rng) {
  if (n == 0) throw config_error("generate_knapsack: dimension must be positive");
  if (!(capacity > 0.0)) throw config_error("generate_knapsack: capacity must be positive");
  KnapsackInstance inst;
  inst.n = n;
  inst.capacity = capacity;
  inst.weights.reserve(n);
  inst.values.reserve(n);
  const auto positive_poisson = [&rng]() {
    std::uint64_t draw = rng.poisson(1000.0);
    while (draw == 0) draw = rng.poisson(1000.0);
    return static_cast<double>(draw);
  };
  for (std::size_t i = 0; i < n; ++i) inst.weights.push_back(positive_poisson());
  for (std::size_t i = 0; i < n; ++i) inst.values.push_back(positive_poisson());
  inst.validate();
  return inst;
}

}  // namespace pnsopt
