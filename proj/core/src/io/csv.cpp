#include "pnsopt/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "pnsopt/errors.hpp"

namespace pnsopt {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (result.ec != std::errc{}) throw io_error("format_double: conversion failed");
  return std::string(buffer, result.ptr);
}

std::ofstream open_output_file(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw io_error("cannot open for writing: " + path);
  return out;
}

void write_chain_csv(std::ostream& out, const ChainTrace& trace) {
  out << "step,state_id,log_target,multiplicity\n";
  for (std::size_t k = 0; k < trace.states.size(); ++k) {
    out << k << ',' << trace.states[k] << ',' << format_double(trace.log_targets[k])
        << ",1\n";
  }
}

void write_jump_csv(std::ostream& out, const JumpChainRecord& record) {
  const bool with_escape = !record.escape_probs.empty();
  out << (with_escape ? "jump,state_id,log_target,multiplicity,escape_prob\n"
                      : "jump,state_id,log_target,multiplicity\n");
  for (std::size_t k = 0; k < record.states.size(); ++k) {
    out << k << ',' << record.states[k] << ',' << format_double(record.log_targets[k])
        << ',' << record.multiplicities[k];
    if (with_escape) out << ',' << format_double(record.escape_probs[k]);
    out << '\n';
  }
}

void write_opt_trace_csv(std::ostream& out, const OptTrace& trace, bool include_timing) {
  out << (include_timing ? "step,state_id,log_target,candidates,wall_time\n"
                         : "step,state_id,log_target,candidates\n");
  for (const OptVisit& visit : trace.visited) {
    out << visit.step << ',' << visit.state_id << ',' << format_double(visit.log_target)
        << ',' << visit.n_candidates;
    if (include_timing) out << ',' << format_double(visit.wall_time);
    out << '\n';
  }
}

}  // namespace pnsopt
