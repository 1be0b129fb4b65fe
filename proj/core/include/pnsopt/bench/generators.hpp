#pragma once

#include <cstddef>

#include "pnsopt/problems/knapsack.hpp"
#include "pnsopt/problems/qubo.hpp"
#include "pnsopt/rng.hpp"

namespace pnsopt {

/**
 * Random dense instance: every upper-triangle entry (diagonal included by
 * default) is Normal(0, 100^2); entries below the diagonal are zero. With
 * include_diagonal off the diagonal is zeroed as well.
 */
QuboInstance generate_qubo(std::size_t n, RngStream& rng, bool include_diagonal = true);

/**
 * Random instance with Poisson(1000) integer weights and values (resampled
 * on the astronomically unlikely zero) and the given capacity.
 */
KnapsackInstance generate_knapsack(std::size_t n, double capacity, RngStream& rng);

}  // namespace pnsopt
