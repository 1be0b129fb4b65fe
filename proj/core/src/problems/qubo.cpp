#include "pnsopt/problems/qubo.hpp"

#include <cmath>
#include <stdexcept>

#include "pnsopt/errors.hpp"

namespace pnsopt {

namespace {
constexpr std::uint64_t kRebuildInterval = 4096;  // bounds float drift in long runs
}

std::size_t QuboInstance::triangle_index(std::size_t i, std::size_t j) const {
  // row i starts after i full rows of shrinking length: i*n - i*(i-1)/2
  return i * n - (i * (i - 1)) / 2 + (j - i);
}

double QuboInstance::at(std::size_t i, std::size_t j) const {
  if (i >= n || j >= n) throw std::out_of_range("QuboInstance::at");
  if (i > j) return 0.0;
  return upper[triangle_index(i, j)];
}

void QuboInstance::validate() const {
  if (n == 0) throw config_error("qubo: dimension must be positive");
  if (upper.size() != n * (n + 1) / 2) {
    throw config_error("qubo: packed triangle size does not match n");
  }
  for (double q : upper) {
    if (!std::isfinite(q)) throw config_error("qubo: entries must be finite");
  }
}

double qubo_log_target(const QuboInstance& inst, std::span<const std::uint8_t> x) {
  double total = 0.0;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < inst.n; ++i) {
    for (std::size_t j = i; j < inst.n; ++j, ++idx) {
      if (x[i] && x[j]) total += inst.upper[idx];
    }
  }
  return total;
}

double qubo_flip_delta(const QuboInstance& inst, std::span<const std::uint8_t> x,
                       std::size_t i) {
  double gain = inst.at(i, i);
  for (std::size_t j = 0; j < inst.n; ++j) {
    if (j == i || !x[j]) continue;
    gain += (j > i) ? inst.at(i, j) : inst.at(j, i);
  }
  return (x[i] ? -1.0 : 1.0) * gain;
}

QuboModel::QuboModel(std::shared_ptr<const QuboInstance> inst) : inst_(std::move(inst)) {
  inst_->validate();
  const std::size_t n = inst_->n;
  coupling_.assign(n * n, 0.0);
  diagonal_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    diagonal_[i] = inst_->at(i, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double q = inst_->at(i, j);
      coupling_[i * n + j] = q;
      coupling_[j * n + i] = q;
    }
  }
  x_.assign(n, 0);
  rebuild_caches();
}

void QuboModel::reset() {
  x_.assign(inst_->n, 0);
  rebuild_caches();
}

void QuboModel::rebuild_caches() {
  const std::size_t n = inst_->n;
  gain_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double g = diagonal_[i];
    const double* row = &coupling_[i * n];
    for (std::size_t j = 0; j < n; ++j) {
      if (x_[j]) g += row[j];
    }
    gain_[i] = g;
  }
  value_ = qubo_log_target(*inst_, x_);
  moves_since_rebuild_ = 0;
}

std::vector<double> QuboModel::state() const {
  return std::vector<double>(x_.begin(), x_.end());
}

void QuboModel::set_state(std::span<const double> s) {
  if (s.size() != inst_->n) throw std::invalid_argument("qubo: state size mismatch");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != 0.0 && s[i] != 1.0) {
      throw std::invalid_argument("qubo: state entries must be 0 or 1");
    }
    x_[i] = static_cast<std::uint8_t>(s[i]);
  }
  rebuild_caches();
}

std::uint64_t QuboModel::state_id() const { return binary_state_id(x_); }

double QuboModel::flip_delta(std::size_t i) const {
  return (x_[i] ? -1.0 : 1.0) * gain_[i];
}

double QuboModel::neighbor_log_target(std::size_t i) const {
  return value_ + flip_delta(i);
}

void QuboModel::step_to_neighbor(std::size_t i) {
  if (i >= inst_->n) throw std::out_of_range("qubo: neighbor index");
  value_ += flip_delta(i);
  const double direction = x_[i] ? -1.0 : 1.0;
  const std::size_t n = inst_->n;
  const double* row = &coupling_[i * n];
  for (std::size_t j = 0; j < n; ++j) gain_[j] += direction * row[j];
  x_[i] ^= 1;  // gain_[i] is untouched above: the diagonal of coupling_ is zero
  if (++moves_since_rebuild_ >= kRebuildInterval) rebuild_caches();
}

std::optional<std::size_t> QuboModel::neighbor_matching(
    std::span<const double> target) const {
  if (target.size() != x_.size()) return std::nullopt;
  std::optional<std::size_t> flip;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (target[i] == static_cast<double>(x_[i])) continue;
    if (flip.has_value()) return std::nullopt;
    flip = i;
  }
  return flip;
}

}  // namespace pnsopt
