#include "pnsopt/problems/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pnsopt/errors.hpp"

namespace pnsopt {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

json to_json(const QuboInstance& inst) {
  return json{{"schema_version", kSchemaVersion},
              {"kind", "qubo"},
              {"n", inst.n},
              {"upper_triangle", inst.upper}};
}

json to_json(const KnapsackInstance& inst) {
  return json{{"schema_version", kSchemaVersion},
              {"kind", "knapsack"},
              {"n", inst.n},
              {"capacity", inst.capacity},
              {"weights", inst.weights},
              {"values", inst.values}};
}

json to_json(const IsingXorInstance& inst) {
  json rows = json::array();
  for (const auto& row : inst.rows) rows.push_back(json{row[0], row[1], row[2]});
  json clauses = json::array();
  for (const auto& cl : inst.clauses) clauses.push_back(json{cl.a, cl.b, cl.c, cl.coeff});
  json rhs = json::array();
  for (std::uint8_t bit : inst.b) rhs.push_back(static_cast<int>(bit));
  json planted = json::array();
  for (std::int8_t s : inst.planted) planted.push_back(static_cast<int>(s));
  return json{{"schema_version", kSchemaVersion},
              {"kind", "ising3xor"},
              {"n", inst.n},
              {"rows", rows},
              {"rhs", rhs},
              {"planted", planted},
              {"clauses", clauses}};
}

json to_json(const SimplexQpInstance& inst) {
  return json{{"schema_version", kSchemaVersion},
              {"kind", "simplexqp"},
              {"n", inst.n},
              {"step_sigma", inst.step_sigma},
              {"upper_triangle", inst.upper}};
}

QuboInstance qubo_from_json(const json& j) {
  QuboInstance inst;
  inst.n = j.at("n").get<std::size_t>();
  inst.upper = j.at("upper_triangle").get<std::vector<double>>();
  inst.validate();
  return inst;
}

KnapsackInstance knapsack_from_json(const json& j) {
  KnapsackInstance inst;
  inst.n = j.at("n").get<std::size_t>();
  inst.capacity = j.at("capacity").get<double>();
  inst.weights = j.at("weights").get<std::vector<double>>();
  inst.values = j.at("values").get<std::vector<double>>();
  inst.validate();
  return inst;
}

IsingXorInstance ising_from_json(const json& j) {
  IsingXorInstance inst;
  inst.n = j.at("n").get<std::size_t>();
  for (const auto& row : j.at("rows")) {
    inst.rows.push_back({row.at(0).get<std::uint32_t>(), row.at(1).get<std::uint32_t>(),
                         row.at(2).get<std::uint32_t>()});
  }
  for (const auto& bit : j.at("rhs")) {
    inst.b.push_back(static_cast<std::uint8_t>(bit.get<int>()));
  }
  for (const auto& s : j.at("planted")) {
    inst.planted.push_back(static_cast<std::int8_t>(s.get<int>()));
  }
  for (const auto& cl : j.at("clauses")) {
    inst.clauses.push_back(IsingClause{cl.at(0).get<std::uint32_t>(),
                                       cl.at(1).get<std::uint32_t>(),
                                       cl.at(2).get<std::uint32_t>(), cl.at(3).get<int>()});
  }
  inst.validate();
  const double planted_energy =
      ising_energy(inst, std::span<const std::int8_t>(inst.planted));
  if (planted_energy != static_cast<double>(inst.n)) {
    throw io_error("ising3xor: planted assignment is not the unique optimum on load");
  }
  return inst;
}

SimplexQpInstance simplex_from_json(const json& j) {
  SimplexQpInstance inst;
  inst.n = j.at("n").get<std::size_t>();
  inst.step_sigma = j.at("step_sigma").get<double>();
  inst.upper = j.at("upper_triangle").get<std::vector<double>>();
  inst.validate();
  return inst;
}

}  // namespace

std::string instance_kind(const AnyInstance& inst) {
  return std::visit(
      [](const auto& concrete) -> std::string {
        using T = std::decay_t<decltype(concrete)>;
        if constexpr (std::is_same_v<T, QuboInstance>) return "qubo";
        if constexpr (std::is_same_v<T, KnapsackInstance>) return "knapsack";
        if constexpr (std::is_same_v<T, IsingXorInstance>) return "ising3xor";
        if constexpr (std::is_same_v<T, SimplexQpInstance>) return "simplexqp";
      },
      inst);
}

std::size_t instance_dimension(const AnyInstance& inst) {
  return std::visit([](const auto& concrete) { return concrete.n; }, inst);
}

std::unique_ptr<ProblemModel> make_model(const AnyInstance& inst) {
  return std::visit(
      [](const auto& concrete) -> std::unique_ptr<ProblemModel> {
        using T = std::decay_t<decltype(concrete)>;
        auto shared = std::make_shared<const T>(concrete);
        if constexpr (std::is_same_v<T, QuboInstance>) {
          return std::make_unique<QuboModel>(shared);
        } else if constexpr (std::is_same_v<T, KnapsackInstance>) {
          return std::make_unique<KnapsackModel>(shared);
        } else if constexpr (std::is_same_v<T, IsingXorInstance>) {
          return std::make_unique<IsingXorModel>(shared);
        } else {
          return std::make_unique<SimplexQpModel>(shared);
        }
      },
      inst);
}

std::string instance_to_json(const AnyInstance& inst) {
  const json j = std::visit([](const auto& concrete) { return to_json(concrete); }, inst);
  return j.dump(2);
}

AnyInstance instance_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.at("schema_version").get<int>() != kSchemaVersion) {
      throw io_error("instance: unsupported schema version");
    }
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "qubo") return qubo_from_json(j);
    if (kind == "knapsack") return knapsack_from_json(j);
    if (kind == "ising3xor") return ising_from_json(j);
    if (kind == "simplexqp") return simplex_from_json(j);
    throw io_error("instance: unknown kind '" + kind + "'");
  } catch (const io_error&) {
    throw;
  } catch (const std::exception& e) {
    throw io_error(std::string("instance: malformed document (") + e.what() + ")");
  }
}

void save_instance(const AnyInstance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << instance_to_json(inst) << '\n';
  if (!out) throw io_error("write to '" + path + "' failed");
}

AnyInstance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return instance_from_json(buffer.str());
}

}  // namespace pnsopt
