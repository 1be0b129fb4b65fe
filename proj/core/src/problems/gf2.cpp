#include "pnsopt/problems/gf2.hpp"

#include <stdexcept>

namespace pnsopt {

std::optional<std::vector<std::uint8_t>> gf2_solve(
    const std::vector<std::vector<std::uint8_t>>& a,
    const std::vector<std::uint8_t>& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("gf2_solve: rhs size mismatch");
  for (const auto& row : a) {
    if (row.size() != n) throw std::invalid_argument("gf2_solve: matrix must be square");
  }

  // Augmented copy, eliminated in place.
  std::vector<std::vector<std::uint8_t>> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = a[i];
    m[i].push_back(b[i]);
  }

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && !m[pivot][col]) ++pivot;
    if (pivot == n) return std::nullopt;  // singular
    std::swap(m[col], m[pivot]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || !m[row][col]) continue;
      for (std::size_t k = col; k <= n; ++k) m[row][k] ^= m[col][k];
    }
  }

  std::vector<std::uint8_t> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

}  // namespace pnsopt
