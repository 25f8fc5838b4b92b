#include "scarp/instance.hpp"

#include <queue>
#include <regex>
#include <sstream>

#include "scarp/text.hpp"

namespace scarp {

int Instance::task_count() const {
  int t = 0;
  for (const auto& e : edges)
    if (e.required()) ++t;
  return t;
}

double Instance::total_demand() const {
  double sum = 0.0;
  for (const auto& e : edges) sum += e.demand;
  return sum;
}

namespace {

std::string edge_label(const Edge& e) {
  return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

}  // namespace

std::vector<std::string> validate(const Instance& instance) {
  std::vector<std::string> out;
  const int n = instance.node_count;
  if (n < 1) out.push_back("node count must be positive");
  if (instance.depot < 1 || instance.depot > n) out.push_back("depot outside node range");
  if (!(instance.capacity > 0.0)) out.push_back("capacity must be positive");
  if (instance.reference_cost && !(*instance.reference_cost > 0.0))
    out.push_back("reference cost must be positive");
  if (instance.task_count() < 1) out.push_back("no required edge");

  bool ids_ok = true;
  for (const auto& e : instance.edges) {
    if (e.u < 1 || e.u > n || e.v < 1 || e.v > n) {
      out.push_back("dangling node id on edge " + edge_label(e));
      ids_ok = false;
    }
    if (!(e.cost > 0.0)) out.push_back("non-positive cost on edge " + edge_label(e));
    if (e.demand < 0.0) out.push_back("negative demand on edge " + edge_label(e));
    if (e.demand > instance.capacity) out.push_back("demand exceeds capacity on edge " + edge_label(e));
  }

  if (ids_ok && instance.depot >= 1 && instance.depot <= n) {
    std::vector<std::vector<NodeId>> adj(n + 1);
    for (const auto& e : instance.edges) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    std::vector<bool> seen(n + 1, false);
    std::queue<NodeId> q;
    q.push(instance.depot);
    seen[instance.depot] = true;
    while (!q.empty()) {
      NodeId x = q.front();
      q.pop();
      for (NodeId y : adj[x])
        if (!seen[y]) {
          seen[y] = true;
          q.push(y);
        }
    }
    for (const auto& e : instance.edges)
      if (e.required() && !seen[e.u])
        out.push_back("required edge disconnected " + edge_label(e));
  }
  return out;
}

namespace {

void throw_if_invalid(const Instance& inst) {
  auto violations = validate(inst);
  if (violations.empty()) return;
  std::string msg = violations.front();
  for (std::size_t i = 1; i < violations.size(); ++i) msg += "; " + violations[i];
  throw ParseError(0, msg);
}

}  // namespace

Instance parse_instance(std::string_view text) {
  Instance inst;
  bool have_name = false, have_nodes = false, have_depot = false, have_cap = false;
  int declared_edges = -1;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = text::split_ws(line);
    if (tok.empty()) continue;

    if (declared_edges >= 0 && inst.edge_count() < declared_edges) {
      if (tok.size() != 4) throw ParseError(line_no, "edge line needs 4 fields: <u> <v> <cost> <demand>");
      auto u = text::parse_int(tok[0]);
      auto v = text::parse_int(tok[1]);
      auto c = text::parse_real(tok[2]);
      auto q = text::parse_real(tok[3]);
      if (!u || !v || !c || !q) throw ParseError(line_no, "malformed edge line");
      inst.edges.push_back({static_cast<NodeId>(*u), static_cast<NodeId>(*v), *c, *q});
      continue;
    }

    const std::string_view key = tok[0];
    auto need_value = [&]() {
      if (tok.size() != 2) throw ParseError(line_no, std::string(key) + " expects exactly one value");
    };
    if (key == "NAME") {
      if (tok.size() < 2) throw ParseError(line_no, "NAME expects a value");
      auto rest = text::trim(line.substr(line.find("NAME") + 4));
      inst.name = std::string(rest);
      have_name = true;
    } else if (key == "NODES") {
      need_value();
      auto n = text::parse_int(tok[1]);
      if (!n || *n < 1) throw ParseError(line_no, "NODES must be a positive integer");
      inst.node_count = static_cast<int>(*n);
      have_nodes = true;
    } else if (key == "DEPOT") {
      need_value();
      auto d = text::parse_int(tok[1]);
      if (!d) throw ParseError(line_no, "DEPOT must be an integer");
      inst.depot = static_cast<NodeId>(*d);
      have_depot = true;
    } else if (key == "CAPACITY") {
      need_value();
      auto q = text::parse_real(tok[1]);
      if (!q) throw ParseError(line_no, "CAPACITY must be a number");
      inst.capacity = *q;
      have_cap = true;
    } else if (key == "REFERENCE") {
      need_value();
      auto r = text::parse_real(tok[1]);
      if (!r) throw ParseError(line_no, "REFERENCE must be a number");
      inst.reference_cost = *r;
    } else if (key == "EDGES") {
      need_value();
      auto m = text::parse_int(tok[1]);
      if (!m || *m < 0) throw ParseError(line_no, "EDGES must be a non-negative integer");
      if (declared_edges >= 0) throw ParseError(line_no, "duplicate EDGES section");
      declared_edges = static_cast<int>(*m);
      inst.edges.reserve(declared_edges);
    } else {
      throw ParseError(line_no, "unknown keyword '" + std::string(key) + "'");
    }
  }

  if (!have_name) throw ParseError(0, "missing NAME");
  if (!have_nodes) throw ParseError(0, "missing NODES");
  if (!have_depot) throw ParseError(0, "missing DEPOT");
  if (!have_cap) throw ParseError(0, "missing CAPACITY");
  if (declared_edges < 0) throw ParseError(0, "missing EDGES");
  if (inst.edge_count() != declared_edges)
    throw ParseError(line_no, "expected " + std::to_string(declared_edges) + " edge lines, found " +
                                  std::to_string(inst.edge_count()));
  throw_if_invalid(inst);
  return inst;
}

Instance load_instance(const std::string& path) { return parse_instance(text::read_file(path)); }

std::string serialize_instance(const Instance& instance) {
  std::ostringstream out;
  out << "NAME " << instance.name << '\n';
  out << "NODES " << instance.node_count << '\n';
  out << "DEPOT " << instance.depot << '\n';
  out << "CAPACITY " << text::format_real(instance.capacity) << '\n';
  if (instance.reference_cost) out << "REFERENCE " << text::format_real(*instance.reference_cost) << '\n';
  out << "EDGES " << instance.edge_count() << '\n';
  for (const auto& e : instance.edges)
    out << e.u << ' ' << e.v << ' ' << text::format_real(e.cost) << ' ' << text::format_real(e.demand) << '\n';
  return out.str();
}

Instance import_classic(std::string_view text_in) {
  Instance inst;
  int declared_req = -1, declared_noreq = -1;
  bool have_depot = false;
  // "( 1, 2)   coste 13  demanda 1" and the non-required "( 1, 2) coste 13".
  static const std::regex edge_re(
      R"(^\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*coste\s+([-+0-9.eE]+)(?:\s+demanda\s+([-+0-9.eE]+))?\s*$)");

  std::istringstream in{std::string(text_in)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::smatch m;
    if (std::regex_match(raw, m, edge_re)) {
      Edge e;
      e.u = std::stoi(m[1]);
      e.v = std::stoi(m[2]);
      auto c = text::parse_real(m[3].str());
      if (!c) throw ParseError(line_no, "malformed cost");
      e.cost = *c;
      if (m[4].matched) {
        auto q = text::parse_real(m[4].str());
        if (!q) throw ParseError(line_no, "malformed demand");
        e.demand = *q;
      }
      inst.edges.push_back(e);
      continue;
    }
    auto colon = raw.find(':');
    if (colon == std::string::npos) {
      if (text::trim(raw).empty() || text::trim(raw) == "END") continue;
      throw ParseError(line_no, "unrecognised line");
    }
    auto key = text::trim(std::string_view(raw).substr(0, colon));
    auto value = text::trim(std::string_view(raw).substr(colon + 1));
    auto as_int = [&]() {
      auto v = text::parse_int(value);
      if (!v) throw ParseError(line_no, std::string(key) + " expects an integer");
      return static_cast<int>(*v);
    };
    if (key == "NOMBRE") {
      inst.name = std::string(value);
    } else if (key == "VERTICES") {
      inst.node_count = as_int();
    } else if (key == "ARISTAS_REQ") {
      declared_req = as_int();
    } else if (key == "ARISTAS_NOREQ") {
      declared_noreq = as_int();
    } else if (key == "CAPACIDAD") {
      auto q = text::parse_real(value);
      if (!q) throw ParseError(line_no, "CAPACIDAD expects a number");
      inst.capacity = *q;
    } else if (key == "DEPOSITO") {
      inst.depot = as_int();
      have_depot = true;
    }
    // COMENTARIO, VEHICULOS, TIPO_COSTES_ARISTAS, COSTE_TOTAL_*, LISTA_* headers carry
    // nothing the canonical model needs.
  }
  if (inst.node_count < 1) throw ParseError(0, "missing VERTICES");
  if (!have_depot) throw ParseError(0, "missing DEPOSITO");
  if (declared_req >= 0 && inst.task_count() != declared_req)
    throw ParseError(0, "ARISTAS_REQ declares " + std::to_string(declared_req) + " required edges, found " +
                            std::to_string(inst.task_count()));
  if (declared_req >= 0 && declared_noreq >= 0 && inst.edge_count() != declared_req + declared_noreq)
    throw ParseError(0, "edge count does not match ARISTAS_REQ + ARISTAS_NOREQ");
  if (inst.name.empty()) inst.name = "unnamed";
  throw_if_invalid(inst);
  return inst;
}

Instance load_any_instance(const std::string& path) {
  auto content = text::read_file(path);
  if (content.find("NOMBRE") != std::string::npos || content.find("LISTA_ARISTAS") != std::string::npos)
    return import_classic(content);
  return parse_instance(content);
}

}  // namespace scarp
