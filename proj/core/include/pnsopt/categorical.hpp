#pragma once

#include <cstddef>
#include <span>

#include "pnsopt/log_weight.hpp"
#include "pnsopt/rng.hpp"

namespace pnsopt {

/**
 * log(sum(exp(w))) over log-domain weights, stabilised by subtracting the
 * maximum. Empty input or all-zero mass returns -inf.
 */
double log_sum_exp(std::span<const double> log_weights);

/**
 * Draws an index proportional to exp(log_weights[i]). Weights are normalised
 * after subtracting the maximum, so widely spread magnitudes stay stable.
 * Entries at -inf carry zero mass and are never returned; if every entry is
 * -inf (or the list is empty) the support is empty and std::domain_error is
 * thrown. Consumes exactly one uniform draw.
 */
std::size_t categorical_pick(std::span<const double> log_weights, RngStream& rng);

std::size_t categorical_pick(std::span<const LogWeight> log_weights, RngStream& rng);

}  // namespace pnsopt
