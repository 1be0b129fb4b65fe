// Two-hub toy graph structure tests plus instance serialisation round trips.
// The graph layout is asserted edge by edge against the documented indexing;
// serialisation must preserve every field bit-exactly and reject damaged or
// mislabelled documents.

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "pnsopt/bench/generators.hpp"
#include "pnsopt/errors.hpp"
#include "pnsopt/problems/instance_io.hpp"
#include "pnsopt/problems/toy_graph.hpp"
#include "pnsopt/rng.hpp"

using namespace pnsopt;

namespace {

std::shared_ptr<const ToyLocalMaxInstance> default_toy() {
  return std::make_shared<ToyLocalMaxInstance>();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("toy graph: hub and leaf wiring matches the documented indexing") {
  ToyGraphModel model(default_toy());
  REQUIRE(model.state_count() == 22);

  // Hub 0: neighbor 0 is the other hub, neighbors 1..10 are leaves 2..11.
  model.reset();
  CHECK(model.at_hub());
  REQUIRE(model.neighbor_count() == 11);
  CHECK(model.neighbor_state(0) == 1);
  for (std::size_t i = 1; i <= 10; ++i) CHECK(model.neighbor_state(i) == 1 + i);

  // Hub 1: neighbor 0 is hub 0, neighbors 1..10 are leaves 12..21.
  model.set_state(std::vector<double>{1.0});
  CHECK(model.at_hub());
  REQUIRE(model.neighbor_count() == 11);
  CHECK(model.neighbor_state(0) == 0);
  for (std::size_t i = 1; i <= 10; ++i) CHECK(model.neighbor_state(i) == 11 + i);

  // Every leaf has exactly one neighbor: its owning hub.
  for (std::size_t leaf = 2; leaf <= 21; ++leaf) {
    model.set_state(std::vector<double>{static_cast<double>(leaf)});
    CHECK(!model.at_hub());
    REQUIRE(model.neighbor_count() == 1);
    CHECK(model.neighbor_state(0) == (leaf <= 11 ? 0u : 1u));
  }
}

TEST_CASE("toy graph: log targets are log(100) at hubs and log(0.01) at leaves") {
  ToyGraphModel model(default_toy());
  const double hub = std::log(100.0);
  const double leaf = std::log(0.01);

  model.reset();
  CHECK(model.log_target() == hub);
  CHECK(model.neighbor_log_target(0) == hub);    // the other hub
  CHECK(model.neighbor_log_target(1) == leaf);   // a leaf
  CHECK(model.neighbor_log_target(10) == leaf);

  model.set_state(std::vector<double>{7.0});
  CHECK(model.log_target() == leaf);
  CHECK(model.neighbor_log_target(0) == hub);
}

TEST_CASE("toy graph: stepping moves along the asserted edges") {
  ToyGraphModel model(default_toy());
  model.reset();
  model.step_to_neighbor(0);  // hub 0 -> hub 1
  CHECK(model.state_id() == 1);
  model.step_to_neighbor(4);  // hub 1 -> leaf 15
  CHECK(model.state_id() == 15);
  CHECK(!model.at_hub());
  model.step_to_neighbor(0);  // leaf -> owning hub 1
  CHECK(model.state_id() == 1);
  CHECK_THROWS_AS(model.step_to_neighbor(11), std::out_of_range);
  model.step_to_neighbor(2);
  CHECK_THROWS_AS(model.step_to_neighbor(1), std::out_of_range);
}

TEST_CASE("toy graph: state validation and neighbor matching") {
  ToyGraphModel model(default_toy());
  CHECK_THROWS_AS(model.set_state(std::vector<double>{22.0}), std::invalid_argument);
  CHECK_THROWS_AS(model.set_state(std::vector<double>{-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(model.set_state(std::vector<double>{1.5}), std::invalid_argument);
  CHECK_THROWS_AS(model.set_state(std::vector<double>{0.0, 1.0}), std::invalid_argument);

  model.reset();
  // From hub 0: the other hub is neighbor 0, leaf 6 sits at index 5.
  CHECK(model.neighbor_matching(std::vector<double>{1.0}) == 0);
  CHECK(model.neighbor_matching(std::vector<double>{6.0}) == 5);
  // Leaves of the other hub are not adjacent.
  CHECK(!model.neighbor_matching(std::vector<double>{15.0}).has_value());
  // A leaf matches only its owning hub.
  model.set_state(std::vector<double>{15.0});
  CHECK(model.neighbor_matching(std::vector<double>{1.0}) == 0);
  CHECK(!model.neighbor_matching(std::vector<double>{0.0}).has_value());
  CHECK(!model.neighbor_matching(std::vector<double>{15.0, 1.0}).has_value());
}

TEST_CASE("toy graph: parameter validation") {
  ToyLocalMaxInstance bad;
  bad.n_spokes = 0;
  CHECK_THROWS_AS(bad.validate(), config_error);
  bad = ToyLocalMaxInstance{};
  bad.hub_target = 0.0;
  CHECK_THROWS_AS(bad.validate(), config_error);
  bad = ToyLocalMaxInstance{};
  bad.spoke_target = -0.5;
  CHECK_THROWS_AS(bad.validate(), config_error);
}

TEST_CASE("instance JSON round trips preserve every field exactly") {
  RngStream rng(601, 0);

  SUBCASE("qubo") {
    const QuboInstance inst = generate_qubo(9, rng, true);
    const AnyInstance round = instance_from_json(instance_to_json(inst));
    const auto& back = std::get<QuboInstance>(round);
    CHECK(back.n == inst.n);
    CHECK(back.upper == inst.upper);  // bit-exact doubles
  }

  SUBCASE("knapsack") {
    const KnapsackInstance inst = generate_knapsack(15, 30000.0, rng);
    const AnyInstance round = instance_from_json(instance_to_json(inst));
    const auto& back = std::get<KnapsackInstance>(round);
    CHECK(back.n == inst.n);
    CHECK(back.capacity == inst.capacity);
    CHECK(back.weights == inst.weights);
    CHECK(back.values == inst.values);
  }

  SUBCASE("ising3xor") {
    const IsingXorInstance inst = generate_3r3xor(10, rng);
    const AnyInstance round = instance_from_json(instance_to_json(inst));
    const auto& back = std::get<IsingXorInstance>(round);
    CHECK(back.n == inst.n);
    CHECK(back.rows == inst.rows);
    CHECK(back.b == inst.b);
    CHECK(back.planted == inst.planted);
    REQUIRE(back.clauses.size() == inst.clauses.size());
    for (std::size_t i = 0; i < back.clauses.size(); ++i) {
      CHECK(back.clauses[i].a == inst.clauses[i].a);
      CHECK(back.clauses[i].b == inst.clauses[i].b);
      CHECK(back.clauses[i].c == inst.clauses[i].c);
      CHECK(back.clauses[i].coeff == inst.clauses[i].coeff);
    }
  }

  SUBCASE("simplexqp") {
    SimplexQpInstance inst;
    inst.n = 7;
    const QuboInstance q = generate_qubo(7, rng, true);
    inst.upper = q.upper;
    inst.step_sigma = 0.25;
    const AnyInstance round = instance_from_json(instance_to_json(inst));
    const auto& back = std::get<SimplexQpInstance>(round);
    CHECK(back.n == inst.n);
    CHECK(back.step_sigma == inst.step_sigma);
    CHECK(back.upper == inst.upper);
  }
}

TEST_CASE("serialisation is canonical: identical instances give identical bytes") {
  RngStream rng(602, 0);
  const QuboInstance inst = generate_qubo(6, rng, false);
  const std::string once = instance_to_json(inst);
  const std::string twice = instance_to_json(inst);
  CHECK(once == twice);
  // A round trip re-serialises to the same bytes as well.
  CHECK(instance_to_json(instance_from_json(once)) == once);
}

TEST_CASE("instance kind, dimension, and model dispatch line up") {
  RngStream rng(603, 0);
  const AnyInstance qubo = generate_qubo(5, rng, true);
  const AnyInstance knap = generate_knapsack(5, 4000.0, rng);
  const AnyInstance ising = generate_3r3xor(8, rng);
  SimplexQpInstance sq;
  sq.n = 5;
  sq.upper = generate_qubo(5, rng, true).upper;
  const AnyInstance simplex = sq;

  CHECK(instance_kind(qubo) == "qubo");
  CHECK(instance_kind(knap) == "knapsack");
  CHECK(instance_kind(ising) == "ising3xor");
  CHECK(instance_kind(simplex) == "simplexqp");

  CHECK(instance_dimension(qubo) == 5);
  CHECK(instance_dimension(ising) == 8);

  CHECK(make_model(qubo)->kind() == "qubo");
  CHECK(make_model(knap)->kind() == "knapsack");
  CHECK(make_model(ising)->kind() == "ising3xor");
  CHECK(make_model(simplex)->kind() == "simplexqp");
}

TEST_CASE("file round trip via save and load") {
  RngStream rng(604, 0);
  const AnyInstance inst = generate_knapsack(12, 9000.0, rng);
  const std::string path = temp_path("pnsopt_io_roundtrip.json");
  save_instance(inst, path);
  const AnyInstance back = load_instance(path);
  CHECK(instance_to_json(back) == instance_to_json(inst));
  std::remove(path.c_str());
}

TEST_CASE("damaged or mislabelled documents raise io_error") {
  CHECK_THROWS_AS((void)load_instance("/nonexistent/dir/missing.json"), io_error);
  CHECK_THROWS_AS((void)instance_from_json("this is not json"), io_error);
  CHECK_THROWS_AS((void)instance_from_json("{}"), io_error);
  CHECK_THROWS_AS(
      (void)instance_from_json(R"({"schema_version": 999, "kind": "qubo"})"), io_error);
  CHECK_THROWS_AS(
      (void)instance_from_json(R"({"schema_version": 1, "kind": "mystery"})"), io_error);
  // Right shape, wrong payload type.
  CHECK_THROWS_AS((void)instance_from_json(
                      R"({"schema_version": 1, "kind": "qubo", "n": 2,
                          "upper_triangle": "oops"})"),
                  io_error);
}

TEST_CASE("a tampered planted assignment is rejected on load") {
  RngStream rng(605, 0);
  IsingXorInstance inst = generate_3r3xor(8, rng);
  inst.planted[0] = static_cast<std::int8_t>(-inst.planted[0]);
  const std::string text = instance_to_json(inst);
  CHECK_THROWS_AS((void)instance_from_json(text), io_error);
}

TEST_CASE("save_instance refuses unwritable paths") {
  RngStream rng(606, 0);
  const AnyInstance inst = generate_qubo(4, rng, true);
  CHECK_THROWS_AS(save_instance(inst, "/nonexistent/dir/out.json"), io_error);
}
