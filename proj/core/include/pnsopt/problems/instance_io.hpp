#pragma once

#include <memory>
#include <string>
#include <variant>

#include "pnsopt/problem_model.hpp"
#include "pnsopt/problems/ising_xor.hpp"
#include "pnsopt/problems/knapsack.hpp"
#include "pnsopt/problems/qubo.hpp"
#include "pnsopt/problems/simplex_qp.hpp"

namespace pnsopt {

/** Any serialisable problem instance. */
using AnyInstance =
    std::variant<QuboInstance, KnapsackInstance, IsingXorInstance, SimplexQpInstance>;

/** The kind tag used in files and command lines. */
std::string instance_kind(const AnyInstance& inst);

std::size_t instance_dimension(const AnyInstance& inst);

/** Builds the single-run model for an instance (the instance is copied once). */
std::unique_ptr<ProblemModel> make_model(const AnyInstance& inst);

/**
 * JSON round trip. Serialisation is versioned and canonical (sorted keys,
 * shortest round-trip number rendering), so identical instances produce
 * identical bytes, integers survive exactly, and reals survive to the bit.
 */
std::string instance_to_json(const AnyInstance& inst);
AnyInstance instance_from_json(const std::string& text);

/** File variants; failures (open, parse, schema) raise io_error. */
void save_instance(const AnyInstance& inst, const std::string& path);
AnyInstance load_instance(const std::string& path);

}  // namespace pnsopt
