#pragma once

#define PNSOPT_VERSION_MAJOR 0
#define PNSOPT_VERSION_MINOR 1
#define PNSOPT_VERSION_PATCH 0

namespace pnsopt {

inline constexpr const char* version_string = "0.1.0";

}  // namespace pnsopt
