#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace pnsopt {

/**
 * Solves A x = b over GF(2) by Gaussian elimination. `a` is a square matrix
 * of 0/1 entries, row-major as vectors. Returns the unique solution when A
 * is invertible, std::nullopt when A is singular (the system is then either
 * inconsistent or underdetermined, and no solution is reported).
 */
std::optional<std::vector<std::uint8_t>> gf2_solve(
    const std::vector<std::vector<std::uint8_t>>& a,
    const std::vector<std::uint8_t>& b);

}  // namespace pnsopt
