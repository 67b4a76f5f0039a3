#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "support/astgen.hpp"
#include "support/fixtures.hpp"
#include "varmap/graph.hpp"
#include "varmap/parse.hpp"
#include "varmap/rename.hpp"

using namespace varmap;
using namespace varmap::graph;

namespace {

int count_edges(const ProgramGraph& g, int var_node, int relation) {
  int n = 0;
  for (const auto& e : g.edges)
    if (e.relation == relation && (e.src == var_node || e.dst == var_node)) ++n;
  return n;
}

int var_index(const ProgramGraph& g, const std::string& qualified) {
  for (size_t i = 0; i < g.var_qualified.size(); ++i)
    if (g.var_qualified[i] == qualified) return static_cast<int>(i);
  return -1;
}

}  // namespace

TEST_CASE("block with one expression matches the reference shape") {
  // { a = a - b; } with a written once, read once, b read once.
  lang::Program p = lang::parse(fixtures::kBlockAssign);
  ProgramGraph g = build_graph(p);

  REQUIRE(g.var_nodes.size() == 2);
  CHECK(g.var_names == std::vector<std::string>{"a", "b"});

  int a = g.var_nodes[0];
  int b = g.var_nodes[1];
  // a: written by `a = 2` and the inner assignment, read once on its rhs.
  // b: written by `b = 1`, read once. Bare declarators add no occurrence.
  CHECK(count_edges(g, a, kWriteFwd) == 2);
  CHECK(count_edges(g, a, kReadFwd) == 1);
  CHECK(count_edges(g, b, kWriteFwd) == 1);
  CHECK(count_edges(g, b, kReadFwd) == 1);

  // Chrono chains span every occurrence of each variable.
  int chrono = 0;
  for (const auto& e : g.edges) chrono += e.relation == kChrono ? 1 : 0;
  CHECK(chrono == (3 - 1) + (2 - 1));
}

TEST_CASE("counting loop has the documented occurrence profile") {
  lang::Program p = lang::parse(fixtures::kCountForLoop);
  ProgramGraph g = build_graph(p);
  int i = var_index(g, "main::i");
  REQUIRE(i >= 0);
  int i_node = g.var_nodes[static_cast<size_t>(i)];

  // i = 1 (write), i <= n (read), i++ (write), printf arg (read); the bare
  // declaration contributes no occurrence.
  CHECK(count_edges(g, i_node, kWriteFwd) == 2);
  CHECK(count_edges(g, i_node, kReadFwd) == 2);

  int chrono_i = 0;
  std::set<int> i_ids;
  for (const auto& e : g.edges) {
    if (e.relation == kWriteFwd && e.dst == i_node) i_ids.insert(e.src);
    if (e.relation == kReadFwd && e.dst == i_node) i_ids.insert(e.src);
  }
  for (const auto& e : g.edges)
    if (e.relation == kChrono && i_ids.count(e.src) && i_ids.count(e.dst)) ++chrono_i;
  CHECK(chrono_i == 3);

  int n = var_index(g, "main::n");
  int n_node = g.var_nodes[static_cast<size_t>(n)];
  CHECK(count_edges(g, n_node, kWriteFwd) == 1);  // scanf
  CHECK(count_edges(g, n_node, kReadFwd) == 1);   // condition
}

TEST_CASE("variable used once has no chrono edge") {
  lang::Program p = lang::parse("int main(){ int a; a = 1; return 0; }");
  ProgramGraph g = build_graph(p);
  for (const auto& e : g.edges) CHECK(e.relation != kChrono);
}

TEST_CASE("var nodes carry no identifier information in the node list") {
  lang::Program p = lang::parse(fixtures::kCountHelperUninit);
  ProgramGraph g = build_graph(p);
  REQUIRE(g.var_nodes.size() == 4);
  for (auto v : g.var_nodes) CHECK(g.node_kinds[static_cast<size_t>(v)] == var_node_kind());
  CHECK(g.var_qualified ==
        std::vector<std::string>{"loop::j", "loop::l", "main::j", "main::l"});
}

TEST_CASE("renaming variables leaves nodes and edges untouched") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    lang::Program p = astgen::random_program(seed);
    lang::RenameMap m;
    int k = 0;
    for (const auto& name : lang::variable_names(p))
      m.pairs.emplace_back(name, "renamed_" + std::to_string(k++));
    lang::Program q = lang::rename_forward(p, m);

    ProgramGraph ga = build_graph(p);
    ProgramGraph gb = build_graph(q);
    CHECK(ga.node_kinds == gb.node_kinds);
    CHECK(ga.edges == gb.edges);
    CHECK(ga.var_nodes == gb.var_nodes);
  }
}

TEST_CASE("occurrence edges account for every identifier use") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    lang::Program p = astgen::random_program(seed);
    ProgramGraph g = build_graph(p);
    CHECK(g.var_nodes.size() == p.variables.size());

    std::map<int, int> occurrences;  // var node -> ID nodes attached
    int chrono = 0;
    for (const auto& e : g.edges) {
      if (e.relation == kWriteFwd || e.relation == kReadFwd) occurrences[e.dst]++;
      if (e.relation == kChrono) ++chrono;
    }
    int expected_chrono = 0;
    for (auto v : g.var_nodes) {
      auto it = occurrences.find(v);
      expected_chrono += std::max(0, (it == occurrences.end() ? 0 : it->second) - 1);
    }
    CHECK(chrono == expected_chrono);
  }
}

TEST_CASE("child and write/read families come in mutual inverse pairs") {
  lang::Program p = lang::parse(fixtures::kCountHelperFixed);
  ProgramGraph g = build_graph(p);
  auto has_edge = [&g](int src, int dst, int rel) {
    return std::find(g.edges.begin(), g.edges.end(),
                     Edge{static_cast<std::int32_t>(src), static_cast<std::int32_t>(dst),
                          static_cast<std::int32_t>(rel)}) != g.edges.end();
  };
  for (const auto& e : g.edges) {
    if (e.relation == kChildFwd) CHECK(has_edge(e.dst, e.src, kChildBack));
    if (e.relation == kWriteFwd) CHECK(has_edge(e.dst, e.src, kWriteBack));
    if (e.relation == kReadFwd) CHECK(has_edge(e.dst, e.src, kReadBack));
  }
}

TEST_CASE("disabled families are omitted entirely") {
  lang::Program p = lang::parse(fixtures::kCountForLoop);
  for (unsigned mask = 1; mask < 32; ++mask) {
    EdgeSetConfig cfg = EdgeSetConfig::from_mask(mask);
    ProgramGraph g = build_graph(p, cfg);
    for (const auto& e : g.edges) CHECK(cfg.relation_enabled(e.relation));
  }
  CHECK_THROWS_AS(build_graph(p, EdgeSetConfig::from_mask(0)), std::invalid_argument);
}

TEST_CASE("serialization round trips") {
  lang::Program p = lang::parse(fixtures::kBlockAssign);
  ProgramGraph g = build_graph(p);
  CHECK(deserialize_graph(serialize_graph(g)) == g);

  ProgramGraph empty = build_graph(lang::parse("int main(){return 0;}"));
  CHECK(deserialize_graph(serialize_graph(empty)) == empty);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    ProgramGraph r = build_graph(astgen::random_program(seed));
    CHECK(deserialize_graph(serialize_graph(r)) == r);
  }
}

TEST_CASE("serialization is stable across calls") {
  lang::Program p = lang::parse(fixtures::kCountHelperUninit);
  CHECK(serialize_graph(build_graph(p)) == serialize_graph(build_graph(p)));
}

TEST_CASE("malformed payloads raise decode errors") {
  CHECK_THROWS_AS(deserialize_graph("not json"), graph_decode_error);
  CHECK_THROWS_AS(deserialize_graph("{\"version\":1}"), graph_decode_error);
  CHECK_THROWS_AS(deserialize_graph("{\"version\":9}"), graph_decode_error);

  lang::Program p = lang::parse(fixtures::kBlockAssign);
  std::string good = serialize_graph(build_graph(p));
  std::string bad = good;
  bad.replace(bad.find("\"nodes\":["), 9, "\"nodes\":[999,");
  CHECK_THROWS_AS(deserialize_graph(bad), graph_decode_error);
}
