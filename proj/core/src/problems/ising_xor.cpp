#include "pnsopt/problems/ising_xor.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "pnsopt/errors.hpp"
#include "pnsopt/problems/gf2.hpp"

namespace pnsopt {

void IsingXorInstance::validate() const {
  if (n < 3) throw config_error("ising3xor: need at least 3 variables");
  if (rows.size() != n || b.size() != n || planted.size() != n) {
    throw config_error("ising3xor: rows/rhs/planted sizes must equal n");
  }
  for (const auto& row : rows) {
    if (!(row[0] < row[1] && row[1] < row[2] && row[2] < n)) {
      throw config_error("ising3xor: rows must hold three ascending indices below n");
    }
  }
  for (std::int8_t s : planted) {
    if (s != 1 && s != -1) throw config_error("ising3xor: planted spins must be +1/-1");
  }
  for (const auto& cl : clauses) {
    if (!(cl.a < cl.b && cl.b < cl.c && cl.c < n)) {
      throw config_error("ising3xor: clause indices must be ascending and below n");
    }
  }
}

IsingXorInstance generate_3r3xor(std::size_t n, RngStream& rng,
                                 std::size_t max_attempts) {
  if (n < 3) throw config_error("ising3xor: need at least 3 variables");

  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    IsingXorInstance inst;
    inst.n = n;
    inst.rows.resize(n);
    inst.b.resize(n);

    std::vector<std::vector<std::uint8_t>> a(n, std::vector<std::uint8_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      // three distinct column indices, uniform over all triples
      std::array<std::uint32_t, 3> cols{};
      cols[0] = static_cast<std::uint32_t>(rng.uniform_index(n));
      do {
        cols[1] = static_cast<std::uint32_t>(rng.uniform_index(n));
      } while (cols[1] == cols[0]);
      do {
        cols[2] = static_cast<std::uint32_t>(rng.uniform_index(n));
      } while (cols[2] == cols[0] || cols[2] == cols[1]);
      std::sort(cols.begin(), cols.end());
      inst.rows[i] = cols;
      inst.b[i] = static_cast<std::uint8_t>(rng.uniform_index(2));
      for (std::uint32_t c : cols) a[i][c] = 1;
    }

    auto solution = gf2_solve(a, inst.b);
    if (!solution.has_value()) continue;

    inst.planted.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      inst.planted[j] = static_cast<std::int8_t>(1 - 2 * static_cast<int>((*solution)[j]));
    }

    std::map<std::array<std::uint32_t, 3>, int> accumulated;
    for (std::size_t i = 0; i < n; ++i) {
      accumulated[inst.rows[i]] += inst.b[i] ? -1 : 1;
    }
    for (const auto& [cols, coeff] : accumulated) {
      if (coeff == 0) continue;  // opposite-sign duplicates cancel exactly
      inst.clauses.push_back(IsingClause{cols[0], cols[1], cols[2], coeff});
    }

    inst.validate();
    return inst;
  }
  throw generation_error("ising3xor: no invertible system found within the attempt budget");
}

std::size_t count_violations(const IsingXorInstance& inst,
                             std::span<const std::uint8_t> x) {
  if (x.size() != inst.n) throw std::invalid_argument("count_violations: size mismatch");
  std::size_t violated = 0;
  for (std::size_t i = 0; i < inst.n; ++i) {
    const auto& row = inst.rows[i];
    const int parity = (x[row[0]] + x[row[1]] + x[row[2]]) & 1;
    if (parity != inst.b[i]) ++violated;
  }
  return violated;
}

double ising_energy(const IsingXorInstance& inst, std::span<const std::int8_t> spins) {
  if (spins.size() != inst.n) throw std::invalid_argument("ising_energy: size mismatch");
  long long total = 0;
  for (const auto& cl : inst.clauses) {
    total += static_cast<long long>(cl.coeff) * spins[cl.a] * spins[cl.b] * spins[cl.c];
  }
  return static_cast<double>(total);
}

IsingXorModel::IsingXorModel(std::shared_ptr<const IsingXorInstance> inst)
    : inst_(std::move(inst)) {
  inst_->validate();
  spin_clauses_.resize(inst_->n);
  for (std::size_t c = 0; c < inst_->clauses.size(); ++c) {
    const auto& cl = inst_->clauses[c];
    spin_clauses_[cl.a].push_back(static_cast<std::uint32_t>(c));
    spin_clauses_[cl.b].push_back(static_cast<std::uint32_t>(c));
    spin_clauses_[cl.c].push_back(static_cast<std::uint32_t>(c));
  }
  s_.assign(inst_->n, 1);
  rebuild_caches();
}

void IsingXorModel::reset() {
  s_.assign(inst_->n, 1);
  rebuild_caches();
}

void IsingXorModel::rebuild_caches() {
  clause_product_.assign(inst_->clauses.size(), 0);
  spin_clause_sum_.assign(inst_->n, 0);
  energy_ = 0;
  for (std::size_t c = 0; c < inst_->clauses.size(); ++c) {
    const auto& cl = inst_->clauses[c];
    const long long prod =
        static_cast<long long>(cl.coeff) * s_[cl.a] * s_[cl.b] * s_[cl.c];
    clause_product_[c] = prod;
    energy_ += prod;
    spin_clause_sum_[cl.a] += prod;
    spin_clause_sum_[cl.b] += prod;
    spin_clause_sum_[cl.c] += prod;
  }
}

std::vector<double> IsingXorModel::state() const {
  return std::vector<double>(s_.begin(), s_.end());
}

void IsingXorModel::set_state(std::span<const double> s) {
  if (s.size() != inst_->n) throw std::invalid_argument("ising3xor: state size mismatch");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != 1.0 && s[i] != -1.0) {
      throw std::invalid_argument("ising3xor: state entries must be +1 or -1");
    }
    s_[i] = static_cast<std::int8_t>(s[i]);
  }
  rebuild_caches();
}

std::uint64_t IsingXorModel::state_id() const {
  std::vector<std::uint8_t> bits(inst_->n);
  for (std::size_t i = 0; i < inst_->n; ++i) bits[i] = s_[i] < 0 ? 1 : 0;
  return binary_state_id(bits);
}

double IsingXorModel::neighbor_log_target(std::size_t i) const {
  return static_cast<double>(energy_ - 2 * spin_clause_sum_[i]);
}

void IsingXorModel::step_to_neighbor(std::size_t i) {
  if (i >= inst_->n) throw std::out_of_range("ising3xor: neighbor index");
  for (std::uint32_t c : spin_clauses_[i]) {
    const long long old = clause_product_[c];
    clause_product_[c] = -old;
    const auto& cl = inst_->clauses[c];
    spin_clause_sum_[cl.a] -= 2 * old;
    spin_clause_sum_[cl.b] -= 2 * old;
    spin_clause_sum_[cl.c] -= 2 * old;
    energy_ -= 2 * old;
  }
  s_[i] = static_cast<std::int8_t>(-s_[i]);
}

std::optional<std::size_t> IsingXorModel::neighbor_matching(
    std::span<const double> target) const {
  if (target.size() != s_.size()) return std::nullopt;
  std::optional<std::size_t> flip;
  for (std::size_t i = 0; i < s_.size(); ++i) {
    if (target[i] == static_cast<double>(s_[i])) continue;
    if (flip.has_value()) return std::nullopt;
    flip = i;
  }
  return flip;
}

}  // namespace pnsopt
