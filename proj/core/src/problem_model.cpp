#include "pnsopt/problem_model.hpp"

#include "pnsopt/categorical.hpp"

namespace pnsopt {

std::size_t propose_neighbor(ProblemModel& model, RngStream& rng) {
  const std::size_t count = model.neighbor_count();
  if (model.uniform_proposal()) return rng.uniform_index(count);
  std::vector<double> log_props(count);
  for (std::size_t i = 0; i < count; ++i) log_props[i] = model.neighbor_log_proposal(i);
  return categorical_pick(std::span<const double>(log_props), rng);
}

}  // namespace pnsopt
