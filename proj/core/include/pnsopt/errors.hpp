#pragma once

#include <stdexcept>
#include <string>

namespace pnsopt {

/** Invalid run or experiment configuration (bad flags, inconsistent spec). */
struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/** File or stream failure while reading or writing artifacts. */
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/** The chain has no admissible move left (every candidate has zero target mass). */
struct absorbing_state_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/** An instance generator exhausted its retry budget. */
struct generation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pnsopt
