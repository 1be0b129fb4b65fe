#include "pnsopt/problems/simplex_qp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pnsopt/errors.hpp"

namespace pnsopt {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kSumTolerance = 1e-9;
constexpr std::uint64_t kRenormaliseInterval = 1000;

bool on_open_simplex(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) {
    if (!(v > 0.0) || !(v < 1.0)) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= kSumTolerance;
}
}  // namespace

double SimplexQpInstance::at(std::size_t i, std::size_t j) const {
  if (i >= n || j >= n) throw std::out_of_range("SimplexQpInstance::at");
  if (i > j) return 0.0;
  return upper[i * n - (i * (i - 1)) / 2 + (j - i)];
}

void SimplexQpInstance::validate() const {
  if (n < 2) throw config_error("simplexqp: need at least 2 coordinates");
  if (upper.size() != n * (n + 1) / 2) {
    throw config_error("simplexqp: packed triangle size does not match n");
  }
  if (!(step_sigma > 0.0)) throw config_error("simplexqp: step_sigma must be positive");
  for (double q : upper) {
    if (!std::isfinite(q)) throw config_error("simplexqp: entries must be finite");
  }
}

double simplex_log_target(const SimplexQpInstance& inst, std::span<const double> x) {
  if (x.size() != inst.n) throw std::invalid_argument("simplex_log_target: size mismatch");
  if (!on_open_simplex(x)) return kNegInf;
  double total = 0.0;
  for (std::size_t i = 0; i < inst.n; ++i) {
    total += inst.at(i, i) * x[i] * x[i];
    for (std::size_t j = i + 1; j < inst.n; ++j) total += inst.at(i, j) * x[i] * x[j];
  }
  return total;
}

std::vector<double> simplex_propose(std::span<const double> x, std::size_t r, double s) {
  if (r >= x.size()) throw std::out_of_range("simplex_propose: coordinate index");
  const double y_r = x[r] + s;
  const double scale = (1.0 - y_r) / (1.0 - x[r]);
  std::vector<double> y(x.size());
  for (std::size_t m = 0; m < x.size(); ++m) y[m] = x[m] * scale;
  y[r] = y_r;
  return y;
}

SimplexQpModel::SimplexQpModel(std::shared_ptr<const SimplexQpInstance> inst)
    : inst_(std::move(inst)) {
  inst_->validate();
  const std::size_t n = inst_->n;
  sym_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    sym_[i * n + i] = inst_->at(i, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double half = 0.5 * inst_->at(i, j);
      sym_[i * n + j] = half;
      sym_[j * n + i] = half;
    }
  }
  reset();
}

void SimplexQpModel::reset() {
  x_.assign(inst_->n, 1.0 / static_cast<double>(inst_->n));
  accepted_moves_ = 0;
  rebuild_caches();
}

void SimplexQpModel::rebuild_caches() {
  const std::size_t n = inst_->n;
  action_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = &sym_[i * n];
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += row[j] * x_[j];
    action_[i] = acc;
  }
  value_ = 0.0;
  for (std::size_t i = 0; i < n; ++i) value_ += x_[i] * action_[i];
  if (!on_open_simplex(x_)) value_ = kNegInf;
}

void SimplexQpModel::set_state(std::span<const double> s) {
  if (s.size() != inst_->n) throw std::invalid_argument("simplexqp: state size mismatch");
  for (double v : s) {
    if (!std::isfinite(v)) throw std::invalid_argument("simplexqp: state entries must be finite");
  }
  x_.assign(s.begin(), s.end());
  rebuild_caches();
}

std::uint64_t SimplexQpModel::state_id() const {
  return fnv1a64(x_.data(), x_.size() * sizeof(double));
}

std::size_t SimplexQpModel::neighbor_count() const {
  throw std::logic_error("simplexqp: no enumerable neighborhood");
}

double SimplexQpModel::neighbor_log_target(std::size_t) const {
  throw std::logic_error("simplexqp: no enumerable neighborhood");
}

void SimplexQpModel::step_to_neighbor(std::size_t) {
  throw std::logic_error("simplexqp: no enumerable neighborhood");
}

std::optional<std::size_t> SimplexQpModel::neighbor_matching(std::span<const double>) const {
  return std::nullopt;
}

double SimplexQpModel::candidate_value(std::size_t r, double y_r) const {
  const std::size_t n = inst_->n;
  const double scale = (1.0 - y_r) / (1.0 - x_[r]);
  const double excess = y_r - scale * x_[r];
  return scale * scale * value_ + 2.0 * scale * excess * action_[r] +
         excess * excess * sym_[r * n + r];
}

std::size_t SimplexQpModel::sample_candidate_pairs(std::size_t pairs, RngStream& rng,
                                                   std::vector<double>& log_targets) {
  if (pairs == 0) throw std::invalid_argument("simplexqp: need at least one proposal pair");
  batch_.clear();
  log_targets.clear();
  for (std::size_t p = 0; p < pairs; ++p) {
    const std::size_t r = rng.uniform_index(inst_->n);
    const double s = rng.normal(0.0, inst_->step_sigma);
    for (const double shift : {s, -s}) {
      const double y_r = x_[r] + shift;
      const bool feasible = y_r > 0.0 && y_r < 1.0;
      const double lt = feasible ? candidate_value(r, y_r) : kNegInf;
      batch_.push_back(Candidate{r, shift, lt});
      log_targets.push_back(lt);
    }
  }
  return batch_.size();
}

void SimplexQpModel::step_to_candidate(std::size_t i) {
  if (i >= batch_.size()) throw std::out_of_range("simplexqp: candidate index");
  const Candidate& cand = batch_[i];
  if (cand.log_target == kNegInf) {
    throw std::logic_error("simplexqp: cannot adopt an infeasible candidate");
  }
  const std::size_t n = inst_->n;
  const std::size_t r = cand.r;
  const double y_r = x_[r] + cand.shift;
  const double scale = (1.0 - y_r) / (1.0 - x_[r]);
  const double excess = y_r - scale * x_[r];
  for (std::size_t m = 0; m < n; ++m) x_[m] *= scale;
  x_[r] = y_r;
  for (std::size_t m = 0; m < n; ++m) {
    action_[m] = scale * action_[m] + excess * sym_[m * n + r];
  }
  value_ = cand.log_target;
  batch_.clear();
  if (++accepted_moves_ % kRenormaliseInterval == 0) {
    double sum = 0.0;
    for (double v : x_) sum += v;
    for (double& v : x_) v /= sum;
    rebuild_caches();
  }
}

}  // namespace pnsopt
