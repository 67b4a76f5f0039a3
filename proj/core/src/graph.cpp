#include <stdexcept>

#include "json.hpp"
#include "varmap/graph.hpp"

namespace varmap::graph {

namespace {

// Kind indices; must match node_type_vocab() order.
enum Kind : int {
  kProgram, kFunction, kParams, kParam, kBlock, kDecl, kAssign, kIf, kFor, kWhile,
  kCall, kReturn, kScanf, kPrintf, kExpr, kUnary, kId, kVar, kIntConst, kFloatConst,
  kFormatString, kTypeInt, kTypeFloat, kTypeVoid,
  kOpAdd, kOpSub, kOpMul, kOpDiv, kOpMod, kOpLt, kOpLe, kOpGt, kOpGe, kOpEq, kOpNe,
  kOpAnd, kOpOr, kOpNot, kOpNeg, kOpPreInc, kOpPostInc, kOpPreDec, kOpPostDec,
  kKindCount,
};

const std::vector<std::string> kVocab = {
    "program", "function", "params", "param", "block", "decl", "assign", "if", "for",
    "while", "call", "return", "scanf", "printf", "expr", "unary", "ID", "var",
    "int-const", "float-const", "format-string", "type-int", "type-float", "type-void",
    "op:+", "op:-", "op:*", "op:/", "op:%", "op:<", "op:<=", "op:>", "op:>=", "op:==",
    "op:!=", "op:&&", "op:||", "op:!", "op:neg", "op:++pre", "op:++post", "op:--pre",
    "op:--post",
};

int bin_op_kind(lang::BinOp op) {
  using lang::BinOp;
  switch (op) {
    case BinOp::Add: return kOpAdd;
    case BinOp::Sub: return kOpSub;
    case BinOp::Mul: return kOpMul;
    case BinOp::Div: return kOpDiv;
    case BinOp::Mod: return kOpMod;
    case BinOp::Lt: return kOpLt;
    case BinOp::Le: return kOpLe;
    case BinOp::Gt: return kOpGt;
    case BinOp::Ge: return kOpGe;
    case BinOp::Eq: return kOpEq;
    case BinOp::Ne: return kOpNe;
    case BinOp::And: return kOpAnd;
    case BinOp::Or: return kOpOr;
  }
  return kOpAdd;
}

int un_op_kind(lang::UnOp op) {
  using lang::UnOp;
  switch (op) {
    case UnOp::Neg: return kOpNeg;
    case UnOp::Not: return kOpNot;
    case UnOp::PreInc: return kOpPreInc;
    case UnOp::PostInc: return kOpPostInc;
    case UnOp::PreDec: return kOpPreDec;
    case UnOp::PostDec: return kOpPostDec;
  }
  return kOpNeg;
}

int type_kind(lang::Type t) {
  switch (t) {
    case lang::Type::Int: return kTypeInt;
    case lang::Type::Float: return kTypeFloat;
    case lang::Type::Void: return kTypeVoid;
  }
  return kTypeInt;
}

class Builder {
 public:
  Builder(const lang::Program& p, const EdgeSetConfig& cfg) : p_(p), cfg_(cfg) {}

  ProgramGraph run() {
    g_.edge_mask = cfg_.mask();
    // Variable nodes first, in declaration order.
    for (const auto& v : p_.variables) {
      g_.var_nodes.push_back(static_cast<std::int32_t>(g_.node_kinds.size()));
      g_.node_kinds.push_back(kVar);
      g_.var_names.push_back(v.name);
      g_.var_qualified.push_back(v.qualified);
    }
    id_chains_.resize(p_.variables.size());

    int root = add_node(kProgram);
    std::vector<int> kids;
    for (const auto& f : p_.functions) kids.push_back(build_function(f));
    link_children(root, kids);

    if (cfg_.chronological)
      for (const auto& chain : id_chains_)
        for (size_t i = 1; i < chain.size(); ++i)
          add_edge(chain[i - 1], chain[i], kChrono);
    return std::move(g_);
  }

 private:
  int add_node(int kind) {
    g_.node_kinds.push_back(kind);
    return static_cast<int>(g_.node_kinds.size()) - 1;
  }

  void add_edge(int src, int dst, int relation) {
    g_.edges.push_back({static_cast<std::int32_t>(src), static_cast<std::int32_t>(dst),
                        static_cast<std::int32_t>(relation)});
  }

  void link_children(int parent, const std::vector<int>& kids) {
    if (cfg_.ast)
      for (int kid : kids) {
        add_edge(parent, kid, kChildFwd);
        add_edge(kid, parent, kChildBack);
      }
    if (cfg_.sibling)
      for (size_t i = 1; i < kids.size(); ++i) add_edge(kids[i - 1], kids[i], kSibling);
  }

  // ID occurrence: links to its variable node and joins the chrono chain.
  int build_id(int var_id, bool write) {
    int node = add_node(kId);
    int var_node = g_.var_nodes[static_cast<size_t>(var_id)];
    if (write && cfg_.write) {
      add_edge(node, var_node, kWriteFwd);
      add_edge(var_node, node, kWriteBack);
    }
    if (!write && cfg_.read) {
      add_edge(node, var_node, kReadFwd);
      add_edge(var_node, node, kReadBack);
    }
    id_chains_[static_cast<size_t>(var_id)].push_back(node);
    return node;
  }

  int build_function(const lang::Function& f) {
    int node = add_node(kFunction);
    std::vector<int> kids;
    kids.push_back(add_node(type_kind(f.return_type)));
    int params = add_node(kParams);
    std::vector<int> param_kids;
    for (const auto& param : f.params) {
      int pn = add_node(kParam);
      link_children(pn, {add_node(type_kind(param.type))});
      param_kids.push_back(pn);
    }
    link_children(params, param_kids);
    kids.push_back(params);
    kids.push_back(build_block(f.body));
    link_children(node, kids);
    return node;
  }

  int build_block(const std::vector<lang::Stmt>& stmts) {
    int node = add_node(kBlock);
    std::vector<int> kids;
    for (const auto& s : stmts) kids.push_back(build_stmt(s));
    link_children(node, kids);
    return node;
  }

  int build_stmt(const lang::Stmt& s) {
    using K = lang::Stmt::Kind;
    switch (s.kind) {
      case K::Decl: {
        int node = add_node(kDecl);
        std::vector<int> kids;
        kids.push_back(add_node(type_kind(s.decl_type)));
        // Initialized declarators look like assignments; bare declarators
        // contribute no ID occurrence.
        for (const auto& d : s.decls)
          if (!d.init.empty()) {
            int assign = add_node(kAssign);
            int id = build_id(d.var_id, /*write=*/true);
            int value = build_expr(d.init[0]);
            link_children(assign, {id, value});
            kids.push_back(assign);
          }
        link_children(node, kids);
        return node;
      }
      case K::Assign: {
        int node = add_node(kAssign);
        int id = build_id(s.target_var_id, /*write=*/true);
        int value = build_expr(s.exprs[0]);
        link_children(node, {id, value});
        return node;
      }
      case K::ExprStmt:
        return build_expr(s.exprs[0]);
      case K::If: {
        int node = add_node(kIf);
        std::vector<int> kids;
        kids.push_back(build_expr(s.exprs[0]));
        kids.push_back(build_block(s.body));
        if (s.has_else) kids.push_back(build_block(s.else_body));
        link_children(node, kids);
        return node;
      }
      case K::While: {
        int node = add_node(kWhile);
        int cond = build_expr(s.exprs[0]);
        int body = build_block(s.body);
        link_children(node, {cond, body});
        return node;
      }
      case K::For: {
        int node = add_node(kFor);
        std::vector<int> kids;
        if (!s.init.empty()) kids.push_back(build_stmt(s.init[0]));
        if (!s.exprs.empty()) kids.push_back(build_expr(s.exprs[0]));
        if (!s.step.empty()) kids.push_back(build_stmt(s.step[0]));
        kids.push_back(build_block(s.body));
        link_children(node, kids);
        return node;
      }
      case K::Scanf: {
        int node = add_node(kScanf);
        std::vector<int> kids;
        kids.push_back(add_node(kFormatString));
        for (const auto& e : s.exprs) kids.push_back(build_id(e.var_id, /*write=*/true));
        link_children(node, kids);
        return node;
      }
      case K::Printf: {
        int node = add_node(kPrintf);
        std::vector<int> kids;
        kids.push_back(add_node(kFormatString));
        for (const auto& e : s.exprs) kids.push_back(build_expr(e));
        link_children(node, kids);
        return node;
      }
      case K::Return: {
        int node = add_node(kReturn);
        if (!s.exprs.empty()) link_children(node, {build_expr(s.exprs[0])});
        return node;
      }
      case K::Block:
        return build_block(s.body);
    }
    return 0;
  }

  int build_expr(const lang::Expr& e) {
    using K = lang::Expr::Kind;
    switch (e.kind) {
      case K::IntLit:
        return add_node(kIntConst);
      case K::FloatLit:
        return add_node(kFloatConst);
      case K::Var:
        return build_id(e.var_id, /*write=*/false);
      case K::Unary: {
        int node = add_node(kUnary);
        int op = add_node(un_op_kind(e.un_op));
        bool is_step = e.un_op == lang::UnOp::PreInc || e.un_op == lang::UnOp::PostInc ||
                       e.un_op == lang::UnOp::PreDec || e.un_op == lang::UnOp::PostDec;
        int operand = is_step ? build_id(e.children[0].var_id, /*write=*/true)
                              : build_expr(e.children[0]);
        link_children(node, {op, operand});
        return node;
      }
      case K::Binary: {
        int node = add_node(kExpr);
        int lhs = build_expr(e.children[0]);
        int op = add_node(bin_op_kind(e.bin_op));
        int rhs = build_expr(e.children[1]);
        link_children(node, {lhs, op, rhs});
        return node;
      }
      case K::Call: {
        int node = add_node(kCall);
        std::vector<int> kids;
        for (const auto& a : e.children) kids.push_back(build_expr(a));
        link_children(node, kids);
        return node;
      }
    }
    return 0;
  }

  const lang::Program& p_;
  const EdgeSetConfig& cfg_;
  ProgramGraph g_;
  std::vector<std::vector<int>> id_chains_;
};

}  // namespace

EdgeSetConfig EdgeSetConfig::from_mask(unsigned mask) {
  EdgeSetConfig c;
  c.ast = mask & 1u;
  c.sibling = mask & 2u;
  c.write = mask & 4u;
  c.read = mask & 8u;
  c.chronological = mask & 16u;
  return c;
}

unsigned EdgeSetConfig::mask() const {
  return (ast ? 1u : 0) | (sibling ? 2u : 0) | (write ? 4u : 0) | (read ? 8u : 0) |
         (chronological ? 16u : 0);
}

bool EdgeSetConfig::relation_enabled(int relation) const {
  switch (relation) {
    case kChildFwd:
    case kChildBack: return ast;
    case kSibling: return sibling;
    case kWriteFwd:
    case kWriteBack: return write;
    case kReadFwd:
    case kReadBack: return read;
    case kChrono: return chronological;
    default: return false;
  }
}

const std::vector<std::string>& node_type_vocab() { return kVocab; }
int vocab_size() { return static_cast<int>(kVocab.size()); }
int var_node_kind() { return kVar; }

ProgramGraph build_graph(const lang::Program& p, const EdgeSetConfig& config) {
  if (!p.analyzed) throw std::logic_error("build_graph: program not analyzed");
  if (!config.any()) throw std::invalid_argument("build_graph: no edge family enabled");
  return Builder(p, config).run();
}

std::string serialize_graph(const ProgramGraph& g) {
  nlohmann::json j;
  j["version"] = 1;
  j["edge_mask"] = g.edge_mask;
  j["nodes"] = g.node_kinds;
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges) edges.push_back({e.src, e.dst, e.relation});
  j["edges"] = std::move(edges);
  j["var_nodes"] = g.var_nodes;
  j["var_names"] = g.var_names;
  j["var_qualified"] = g.var_qualified;
  return j.dump();
}

ProgramGraph deserialize_graph(const std::string& bytes) {
  nlohmann::json j = nlohmann::json::parse(bytes, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw graph_decode_error("graph payload is not valid JSON");
  try {
    if (j.at("version").get<int>() != 1) throw graph_decode_error("unsupported graph version");
    ProgramGraph g;
    g.edge_mask = j.at("edge_mask").get<unsigned>();
    g.node_kinds = j.at("nodes").get<std::vector<std::int32_t>>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw graph_decode_error("malformed edge");
      g.edges.push_back({e[0].get<std::int32_t>(), e[1].get<std::int32_t>(),
                         e[2].get<std::int32_t>()});
    }
    g.var_nodes = j.at("var_nodes").get<std::vector<std::int32_t>>();
    g.var_names = j.at("var_names").get<std::vector<std::string>>();
    g.var_qualified = j.at("var_qualified").get<std::vector<std::string>>();

    int n = g.num_nodes();
    for (auto kind : g.node_kinds)
      if (kind < 0 || kind >= vocab_size()) throw graph_decode_error("node kind out of range");
    for (const auto& e : g.edges)
      if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n || e.relation < 0 ||
          e.relation >= kNumRelations)
        throw graph_decode_error("edge out of range");
    for (auto v : g.var_nodes)
      if (v < 0 || v >= n || g.node_kinds[static_cast<size_t>(v)] != var_node_kind())
        throw graph_decode_error("var node index invalid");
    if (g.var_names.size() != g.var_nodes.size() ||
        g.var_qualified.size() != g.var_nodes.size())
      throw graph_decode_error("variable metadata size mismatch");
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw graph_decode_error(std::string("graph payload malformed: ") + e.what());
  }
}

}  // namespace varmap::graph
