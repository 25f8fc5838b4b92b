#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scarp {

using NodeId = int;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double cost = 0.0;
  double demand = 0.0;

  bool required() const { return demand > 0.0; }
  bool operator==(const Edge&) const = default;
};

// Undirected network with a single depot. Node ids are 1-based as in the
// benchmark files. Immutable once built.
struct Instance {
  std::string name;
  int node_count = 0;
  NodeId depot = 1;
  double capacity = 0.0;
  std::optional<double> reference_cost;
  std::vector<Edge> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }
  int task_count() const;
  double total_demand() const;

  bool operator==(const Instance&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Every violated invariant, human readable; empty iff the instance is valid.
std::vector<std::string> validate(const Instance& instance);

// Canonical line format:
//   NAME <s> / NODES <n> / DEPOT <s> / CAPACITY <Q> / [REFERENCE <h*>] /
//   EDGES <m> followed by m lines "<u> <v> <cost> <demand>".
// '#' starts a comment. Throws ParseError on syntax or semantic errors.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& path);

// Inverse of parse_instance; numbers are written with round-trip precision.
std::string serialize_instance(const Instance& instance);

// Classic keyword-prefixed benchmark layout (NOMBRE, VERTICES, CAPACIDAD,
// LISTA_ARISTAS_REQ, "( u, v) coste c demanda q", DEPOSITO ...).
Instance import_classic(std::string_view text);

// Loads either format, sniffing the first keyword.
Instance load_any_instance(const std::string& path);

}  // namespace scarp
