#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pnsopt {

/**
 * A weight or probability kept in the log domain. -inf encodes exact zero
 * mass (infeasible or boundary states); +inf and NaN are never representable.
 */
struct LogWeight {
  double value = -std::numeric_limits<double>::infinity();

  static LogWeight from_log(double v) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
      throw std::domain_error("log weight must be a non-NaN value below +inf");
    }
    return LogWeight{v};
  }

  bool is_zero() const noexcept {
    return value == -std::numeric_limits<double>::infinity();
  }
};

/**
 * Log of the acceptance probability min{1, (pi_y / pi_x)^(1/temp)} given the
 * two log targets. The current state must have positive mass; a candidate
 * with log_pi_y = -inf yields a zero weight (never accepted).
 */
inline LogWeight log_acceptance(double log_pi_x, double log_pi_y, double temp) {
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  if (!(temp > 0.0)) {
    throw std::domain_error("log_acceptance: temperature must be > 0");
  }
  if (std::isnan(log_pi_x) || std::isnan(log_pi_y) ||
      log_pi_x == std::numeric_limits<double>::infinity() ||
      log_pi_y == std::numeric_limits<double>::infinity()) {
    throw std::domain_error("log_acceptance: log targets must be non-NaN and below +inf");
  }
  if (log_pi_x == neg_inf) {
    throw std::domain_error("log_acceptance: the current state has zero target mass");
  }
  if (log_pi_y == neg_inf) return LogWeight{neg_inf};
  const double ratio = (log_pi_y - log_pi_x) / temp;
  return LogWeight{ratio < 0.0 ? ratio : 0.0};
}

}  // namespace pnsopt
