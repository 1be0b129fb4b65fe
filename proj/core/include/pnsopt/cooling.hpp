#pragma once

#include <cstdint>
#include <limits>

namespace pnsopt {

enum class ScheduleKind { Constant, Geometric };

/**
 * Temperature trajectory T(k) over step indices k = 0 .. total_steps-1.
 * Constant schedules hold t_start forever; geometric schedules interpolate
 * t_start * (t_end/t_start)^(k/(total_steps-1)), hitting both endpoints
 * exactly. Construction enforces t_start >= t_end > 0, so every schedule is
 * non-increasing in k.
 */
class CoolingSchedule {
 public:
  static CoolingSchedule constant(double t);
  static CoolingSchedule geometric(double t_start, double t_end, std::uint64_t total_steps);

  /** T(k); throws std::out_of_range unless 0 <= k < total_steps. */
  double temperature_at(std::uint64_t k) const;

  ScheduleKind kind() const noexcept { return kind_; }
  double t_start() const noexcept { return t_start_; }
  double t_end() const noexcept { return t_end_; }
  std::uint64_t total_steps() const noexcept { return total_steps_; }

 private:
  CoolingSchedule(ScheduleKind kind, double t_start, double t_end, std::uint64_t total_steps)
      : kind_(kind), t_start_(t_start), t_end_(t_end), total_steps_(total_steps) {}

  ScheduleKind kind_;
  double t_start_;
  double t_end_;
  std::uint64_t total_steps_;
};

}  // namespace pnsopt
