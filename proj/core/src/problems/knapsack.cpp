#include "pnsopt/problems/knapsack.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pnsopt/errors.hpp"

namespace pnsopt {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::uint64_t kRebuildInterval = 4096;
}  // namespace

void KnapsackInstance::validate() const {
  if (n == 0) throw config_error("knapsack: dimension must be positive");
  if (!(capacity > 0.0)) throw config_error("knapsack: capacity must be positive");
  if (weights.size() != n || values.size() != n) {
    throw config_error("knapsack: weights/values size does not match n");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(weights[i] > 0.0) || !(values[i] > 0.0)) {
      throw config_error("knapsack: weights and values must be positive");
    }
  }
}

double knapsack_log_target(const KnapsackInstance& inst, std::span<const std::uint8_t> x) {
  double w = 0.0;
  double v = 0.0;
  for (std::size_t i = 0; i < inst.n; ++i) {
    if (!x[i]) continue;
    w += inst.weights[i];
    v += inst.values[i];
  }
  if (w > inst.capacity) return kNegInf;
  return v > 0.0 ? std::log(v) : kEmptySelectionLogTarget;
}

KnapsackModel::KnapsackModel(std::shared_ptr<const KnapsackInstance> inst)
    : inst_(std::move(inst)) {
  inst_->validate();
  x_.assign(inst_->n, 0);
  rebuild_totals();
}

void KnapsackModel::reset() {
  x_.assign(inst_->n, 0);
  rebuild_totals();
}

void KnapsackModel::rebuild_totals() {
  total_weight_ = 0.0;
  total_value_ = 0.0;
  for (std::size_t i = 0; i < inst_->n; ++i) {
    if (!x_[i]) continue;
    total_weight_ += inst_->weights[i];
    total_value_ += inst_->values[i];
  }
  moves_since_rebuild_ = 0;
}

double KnapsackModel::log_of(double weight_sum, double value_sum, double capacity) {
  if (weight_sum > capacity) return kNegInf;
  return value_sum > 0.0 ? std::log(value_sum) : kEmptySelectionLogTarget;
}

double KnapsackModel::log_target() const {
  return log_of(total_weight_, total_value_, inst_->capacity);
}

std::vector<double> KnapsackModel::state() const {
  return std::vector<double>(x_.begin(), x_.end());
}

void KnapsackModel::set_state(std::span<const double> s) {
  if (s.size() != inst_->n) throw std::invalid_argument("knapsack: state size mismatch");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != 0.0 && s[i] != 1.0) {
      throw std::invalid_argument("knapsack: state entries must be 0 or 1");
    }
    x_[i] = static_cast<std::uint8_t>(s[i]);
  }
  rebuild_totals();
}

std::uint64_t KnapsackModel::state_id() const { return binary_state_id(x_); }

double KnapsackModel::neighbor_log_target(std::size_t i) const {
  const double sign = x_[i] ? -1.0 : 1.0;
  return log_of(total_weight_ + sign * inst_->weights[i],
                total_value_ + sign * inst_->values[i], inst_->capacity);
}

void KnapsackModel::step_to_neighbor(std::size_t i) {
  if (i >= inst_->n) throw std::out_of_range("knapsack: neighbor index");
  const double sign = x_[i] ? -1.0 : 1.0;
  total_weight_ += sign * inst_->weights[i];
  total_value_ += sign * inst_->values[i];
  x_[i] ^= 1;
  if (++moves_since_rebuild_ >= kRebuildInterval) rebuild_totals();
}

std::optional<std::size_t> KnapsackModel::neighbor_matching(
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
