#include <doctest.h>

#include <random>

#include "scarp/instance.hpp"
#include "scarp/text.hpp"
#include "support.hpp"

using namespace scarp;

namespace {

bool has_message(const std::vector<std::string>& msgs, const std::string& needle) {
  for (const auto& m : msgs)
    if (m.find(needle) != std::string::npos) return true;
  return false;
}

const char* kMinimal =
    "NAME tiny\n"
    "NODES 2\n"
    "DEPOT 1\n"
    "CAPACITY 4\n"
    "EDGES 1\n"
    "1 2 5 3\n";

}  // namespace

TEST_CASE("minimal canonical file") {
  const Instance inst = parse_instance(kMinimal);
  CHECK(inst.name == "tiny");
  CHECK(inst.node_count == 2);
  CHECK(inst.task_count() == 1);
  CHECK(inst.capacity == 4);
  CHECK_FALSE(inst.reference_cost.has_value());
  CHECK(inst.total_demand() == 3);
}

TEST_CASE("comments and blank lines are ignored") {
  const Instance inst = parse_instance(
      "# header\nNAME c\n\nNODES 3 # three\nDEPOT 2\nCAPACITY 7.5\nREFERENCE 12\nEDGES 2\n1 2 1 1\n2 3 2 0\n");
  CHECK(inst.depot == 2);
  CHECK(inst.capacity == 7.5);
  REQUIRE(inst.reference_cost);
  CHECK(*inst.reference_cost == 12);
  CHECK(inst.task_count() == 1);
  CHECK(inst.edge_count() == 2);
}

TEST_CASE("demand above capacity is a semantic error") {
  CHECK_THROWS_WITH_AS(parse_instance("NAME x\nNODES 2\nDEPOT 1\nCAPACITY 4\nEDGES 1\n1 2 5 9\n"),
                       doctest::Contains("demand exceeds capacity"), ParseError);
}

TEST_CASE("syntax errors carry the line number") {
  try {
    parse_instance("NAME x\nNODES 2\nDEPOT 1\nCAPACITY 4\nEDGES 1\n1 2 five 3\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
  }
  CHECK_THROWS_AS(parse_instance("NAME x\nNODES 2\nDEPOT 1\nEDGES 1\n1 2 5 3\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("NAME x\nNODES 2\nDEPOT 1\nCAPACITY 4\nEDGES 2\n1 2 5 3\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("NAME x\nNODES 2\nWHATEVER 1\n"), ParseError);
}

TEST_CASE("validate reports each violation") {
  Instance inst = parse_instance(kMinimal);
  CHECK(validate(inst).empty());

  Instance over = inst;
  over.edges[0].demand = over.capacity + 1;
  CHECK(has_message(validate(over), "demand exceeds capacity on edge (1,2)"));

  Instance bad_cost = inst;
  bad_cost.edges[0].cost = 0;
  CHECK(has_message(validate(bad_cost), "non-positive cost"));

  Instance dangling = inst;
  dangling.edges.push_back({2, 7, 1, 0});
  CHECK(has_message(validate(dangling), "dangling node id"));

  Instance no_task = inst;
  no_task.edges[0].demand = 0;
  CHECK(has_message(validate(no_task), "no required edge"));

  Instance depot = inst;
  depot.depot = 5;
  CHECK(has_message(validate(depot), "depot outside node range"));
}

TEST_CASE("required edge in an isolated component") {
  Instance inst;
  inst.name = "iso";
  inst.node_count = 4;
  inst.depot = 1;
  inst.capacity = 10;
  inst.edges = {{1, 2, 1, 1}, {3, 4, 1, 1}};
  CHECK(has_message(validate(inst), "required edge disconnected (3,4)"));
}

TEST_CASE("serialize then parse is the identity") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    testing::RandomInstanceSpec s;
    s.nodes = 3 + i % 9;
    s.edges = s.nodes + i % 7;
    s.required = std::max(1, s.edges / 2);
    Instance inst = testing::random_instance(rng, s, "r" + std::to_string(i));
    for (auto& e : inst.edges) e.cost += 0.1 * (i % 3);  // non-integer costs round-trip too
    if (i % 2) inst.reference_cost = 123.456 + i;
    CHECK(parse_instance(serialize_instance(inst)) == inst);
  }
}

TEST_CASE("classic format import") {
  const char* classic =
      "NOMBRE : toy\n"
      "COMENTARIO : hand made\n"
      "VERTICES : 3\n"
      "ARISTAS_REQ : 2\n"
      "ARISTAS_NOREQ : 1\n"
      "VEHICULOS : 2\n"
      "CAPACIDAD : 5\n"
      "TIPO_COSTES_ARISTAS : EXPLICITOS\n"
      "COSTE_TOTAL_REQ : 7\n"
      "LISTA_ARISTAS_REQ :\n"
      "   ( 1, 2)   coste 3  demanda 2\n"
      "   ( 2, 3)   coste 4  demanda 1\n"
      "LISTA_ARISTAS_NOREQ :\n"
      "   ( 1, 3)   coste 9\n"
      "DEPOSITO :   1\n";
  const Instance inst = import_classic(classic);
  CHECK(inst.name == "toy");
  CHECK(inst.node_count == 3);
  CHECK(inst.capacity == 5);
  CHECK(inst.depot == 1);
  REQUIRE(inst.edge_count() == 3);
  CHECK(inst.edges[0] == Edge{1, 2, 3, 2});
  CHECK(inst.edges[2] == Edge{1, 3, 9, 0});
  CHECK(inst.task_count() == 2);

  CHECK_THROWS_AS(import_classic(std::string(classic).replace(std::string(classic).find("ARISTAS_REQ : 2"), 15,
                                                              "ARISTAS_REQ : 3")),
                  ParseError);
}

TEST_CASE("text helpers") {
  using namespace scarp::text;
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(316) == "316");
  CHECK(format_real(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(parse_real("inf").value() == std::numeric_limits<double>::infinity());
  CHECK_FALSE(parse_real("1.5x").has_value());
  CHECK(format_fixed(2.345678, 2) == "2.35");
  CHECK(parse_int("-12").value() == -12);
  CHECK_FALSE(parse_int("1.0").has_value());
  CHECK(split_ws("  a  b\tc ").size() == 3);
  CHECK(trim("  x ") == "x");
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng) / 7.0;
    CHECK(parse_real(format_real(x)).value() == x);
  }
}
