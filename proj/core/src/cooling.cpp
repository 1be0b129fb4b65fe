#include "pnsopt/cooling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pnsopt/errors.hpp"

namespace pnsopt {

CoolingSchedule CoolingSchedule::constant(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw config_error("constant schedule needs a finite temperature > 0");
  }
  return CoolingSchedule(ScheduleKind::Constant, t, t,
                         std::numeric_limits<std::uint64_t>::max());
}

CoolingSchedule CoolingSchedule::geometric(double t_start, double t_end,
                                           std::uint64_t total_steps) {
  if (!(t_end > 0.0) || !(t_start >= t_end) || !std::isfinite(t_start)) {
    throw config_error("geometric schedule needs t_start >= t_end > 0");
  }
  if (total_steps < 2) {
    throw config_error("geometric schedule needs at least 2 steps");
  }
  return CoolingSchedule(ScheduleKind::Geometric, t_start, t_end, total_steps);
}

double CoolingSchedule::temperature_at(std::uint64_t k) const {
  if (k >= total_steps_) {
    throw std::out_of_range("temperature_at: step " + std::to_string(k) +
                            " is outside the schedule");
  }
  if (kind_ == ScheduleKind::Constant) return t_start_;
  const double progress =
      static_cast<double>(k) / static_cast<double>(total_steps_ - 1);
  return t_start_ * std::pow(t_end_ / t_start_, progress);
}

}  // namespace pnsopt
