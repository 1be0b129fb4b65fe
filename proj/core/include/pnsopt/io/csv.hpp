#pragma once

#include <fstream>
#include <ostream>
#include <string>

#include "pnsopt/chains.hpp"
#include "pnsopt/optimize.hpp"

namespace pnsopt {

/**
 * Shortest decimal string that round-trips the exact double (via
 * std::to_chars), so files containing the same numbers are byte-identical
 * regardless of locale or formatting flags. Infinities and NaN print as
 * "inf" / "-inf" / "nan".
 */
std::string format_double(double value);

/** Opens for writing, throwing io_error when the file cannot be created. */
std::ofstream open_output_file(const std::string& path);

/**
 * Step-by-step chain as CSV: step,state_id,log_target,multiplicity. Every
 * multiplicity is 1, which keeps the schema interchangeable with jump CSVs.
 */
void write_chain_csv(std::ostream& out, const ChainTrace& trace);

/**
 * Jump chain as CSV: jump,state_id,log_target,multiplicity and, when the
 * record carries exact per-state escape probabilities, escape_prob.
 */
void write_jump_csv(std::ostream& out, const JumpChainRecord& record);

/**
 * Optimizer visit log as CSV: step,state_id,log_target,candidates. Wall
 * times are appended only on request so default output is deterministic for
 * a fixed seed.
 */
void write_opt_trace_csv(std::ostream& out, const OptTrace& trace,
                         bool include_timing = false);

}  // namespace pnsopt
