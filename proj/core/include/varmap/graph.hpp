#pragma once

// Typed-graph program representation: one anonymized node per declared
// variable, structural nodes keyed by a fixed kind vocabulary, and five
// edge families (child, sibling, write, read, chronological). Bidirectional
// families are expanded into forward/backward relations, eight relations
// in total, so the network can learn direction-specific weights.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "varmap/ast.hpp"

namespace varmap::graph {

enum Relation : int {
  kChildFwd = 0,
  kChildBack = 1,
  kSibling = 2,
  kWriteFwd = 3,   // ID -> variable node
  kWriteBack = 4,  // variable node -> ID
  kReadFwd = 5,
  kReadBack = 6,
  kChrono = 7,
};

inline constexpr int kNumRelations = 8;

struct EdgeSetConfig {
  bool ast = true;
  bool sibling = true;
  bool write = true;
  bool read = true;
  bool chronological = true;

  static EdgeSetConfig all() { return {}; }
  static EdgeSetConfig from_mask(unsigned mask);
  unsigned mask() const;
  bool any() const { return ast || sibling || write || read || chronological; }
  bool relation_enabled(int relation) const;
};

// Node kind vocabulary; fixed order, identical at train and inference time.
const std::vector<std::string>& node_type_vocab();
int vocab_size();
int var_node_kind();

struct Edge {
  std::int32_t src = 0;
  std::int32_t dst = 0;
  std::int32_t relation = 0;

  bool operator==(const Edge&) const = default;
};

struct ProgramGraph {
  std::vector<std::int32_t> node_kinds;
  std::vector<Edge> edges;
  std::vector<std::int32_t> var_nodes;  // indices of the variable nodes

  // Out-of-band identifier info, for mapping reporting only; never feeds
  // the network.
  std::vector<std::string> var_names;
  std::vector<std::string> var_qualified;

  unsigned edge_mask = 31;

  int num_nodes() const { return static_cast<int>(node_kinds.size()); }
  int num_vars() const { return static_cast<int>(var_nodes.size()); }

  bool operator==(const ProgramGraph&) const = default;
};

ProgramGraph build_graph(const lang::Program& p, const EdgeSetConfig& config = {});

std::string serialize_graph(const ProgramGraph& g);

struct graph_decode_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ProgramGraph deserialize_graph(const std::string& bytes);

}  // namespace varmap::graph
