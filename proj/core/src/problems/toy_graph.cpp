#include "pnsopt/problems/toy_graph.hpp"

#include <cmath>
#include <stdexcept>

#include "pnsopt/errors.hpp"

namespace pnsopt {

void ToyLocalMaxInstance::validate() const {
  if (n_spokes == 0) throw config_error("toy: need at least one spoke per hub");
  if (!(hub_target > 0.0) || !(spoke_target > 0.0)) {
    throw config_error("toy: targets must be positive");
  }
}

ToyGraphModel::ToyGraphModel(std::shared_ptr<const ToyLocalMaxInstance> inst)
    : inst_(std::move(inst)) {
  inst_->validate();
}

double ToyGraphModel::log_target_of(std::size_t state) const {
  return std::log(state < 2 ? inst_->hub_target : inst_->spoke_target);
}

std::vector<double> ToyGraphModel::state() const {
  return {static_cast<double>(current_)};
}

void ToyGraphModel::set_state(std::span<const double> s) {
  if (s.size() != 1) throw std::invalid_argument("toy: state is a single index");
  const double v = s[0];
  if (v < 0.0 || v >= static_cast<double>(state_count()) || v != std::floor(v)) {
    throw std::invalid_argument("toy: state index out of range");
  }
  current_ = static_cast<std::uint64_t>(v);
}

std::size_t ToyGraphModel::neighbor_count() const {
  return at_hub() ? inst_->n_spokes + 1 : 1;
}

std::size_t ToyGraphModel::neighbor_state(std::size_t i) const {
  const std::size_t spokes = inst_->n_spokes;
  if (current_ == 0) return i == 0 ? 1 : 1 + i;           // other hub, then leaves 2..spokes+1
  if (current_ == 1) return i == 0 ? 0 : spokes + 1 + i;  // other hub, then leaves spokes+2..
  if (i != 0) throw std::out_of_range("toy: leaves have a single neighbor");
  return current_ <= spokes + 1 ? 0 : 1;  // back to the owning hub
}

double ToyGraphModel::neighbor_log_target(std::size_t i) const {
  if (i >= neighbor_count()) throw std::out_of_range("toy: neighbor index");
  return log_target_of(neighbor_state(i));
}

void ToyGraphModel::step_to_neighbor(std::size_t i) {
  if (i >= neighbor_count()) throw std::out_of_range("toy: neighbor index");
  current_ = neighbor_state(i);
}

std::optional<std::size_t> ToyGraphModel::neighbor_matching(
    std::span<const double> target) const {
  if (target.size() != 1) return std::nullopt;
  for (std::size_t i = 0; i < neighbor_count(); ++i) {
    if (static_cast<double>(neighbor_state(i)) == target[0]) return i;
  }
  return std::nullopt;
}

}  // namespace pnsopt
