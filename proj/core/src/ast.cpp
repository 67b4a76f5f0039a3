#include "varmap/ast.hpp"

#include <algorithm>
#include <map>

namespace varmap::lang {

const char* type_name(Type t) {
  switch (t) {
    case Type::Int: return "int";
    case Type::Float: return "float";
    case Type::Void: return "void";
  }
  return "?";
}

bool is_comparison(BinOp op) {
  switch (op) {
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge:
    case BinOp::Eq:
    case BinOp::Ne:
      return true;
    default:
      return false;
  }
}

BinOp mirrored_op(BinOp op) {
  switch (op) {
    case BinOp::Lt: return BinOp::Gt;
    case BinOp::Gt: return BinOp::Lt;
    case BinOp::Le: return BinOp::Ge;
    case BinOp::Ge: return BinOp::Le;
    default: return op;  // ==, != are their own mirror
  }
}

const char* bin_op_token(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Mod: return "%";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
  }
  return "?";
}

const char* un_op_token(UnOp op) {
  switch (op) {
    case UnOp::Neg: return "-";
    case UnOp::Not: return "!";
    case UnOp::PreInc:
    case UnOp::PostInc: return "++";
    case UnOp::PreDec:
    case UnOp::PostDec: return "--";
  }
  return "?";
}

Expr Expr::int_lit(long long v) {
  Expr e;
  e.kind = Kind::IntLit;
  e.int_value = v;
  return e;
}

Expr Expr::float_lit(double v) {
  Expr e;
  e.kind = Kind::FloatLit;
  e.float_value = v;
  return e;
}

Expr Expr::var(std::string name) {
  Expr e;
  e.kind = Kind::Var;
  e.name = std::move(name);
  return e;
}

Expr Expr::unary(UnOp op, Expr operand) {
  Expr e;
  e.kind = Kind::Unary;
  e.un_op = op;
  e.children.push_back(std::move(operand));
  return e;
}

Expr Expr::binary(BinOp op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = Kind::Binary;
  e.bin_op = op;
  e.children.push_back(std::move(lhs));
  e.children.push_back(std::move(rhs));
  return e;
}

Expr Expr::call(std::string name, std::vector<Expr> args) {
  Expr e;
  e.kind = Kind::Call;
  e.name = std::move(name);
  e.children = std::move(args);
  return e;
}

Stmt Stmt::decl(Type t, std::vector<Declarator> ds) {
  Stmt s;
  s.kind = Kind::Decl;
  s.decl_type = t;
  s.decls = std::move(ds);
  return s;
}

Stmt Stmt::assign(std::string target, Expr value) {
  Stmt s;
  s.kind = Kind::Assign;
  s.target = std::move(target);
  s.exprs.push_back(std::move(value));
  return s;
}

Stmt Stmt::expr_stmt(Expr e) {
  Stmt s;
  s.kind = Kind::ExprStmt;
  s.exprs.push_back(std::move(e));
  return s;
}

Stmt Stmt::if_stmt(Expr cond, std::vector<Stmt> then_body) {
  Stmt s;
  s.kind = Kind::If;
  s.exprs.push_back(std::move(cond));
  s.body = std::move(then_body);
  return s;
}

Stmt Stmt::if_else(Expr cond, std::vector<Stmt> then_body, std::vector<Stmt> else_body) {
  Stmt s = if_stmt(std::move(cond), std::move(then_body));
  s.else_body = std::move(else_body);
  s.has_else = true;
  return s;
}

Stmt Stmt::while_stmt(Expr cond, std::vector<Stmt> body) {
  Stmt s;
  s.kind = Kind::While;
  s.exprs.push_back(std::move(cond));
  s.body = std::move(body);
  return s;
}

Stmt Stmt::return_stmt() {
  Stmt s;
  s.kind = Kind::Return;
  return s;
}

Stmt Stmt::return_value(Expr e) {
  Stmt s;
  s.kind = Kind::Return;
  s.exprs.push_back(std::move(e));
  return s;
}

Stmt Stmt::block(std::vector<Stmt> body) {
  Stmt s;
  s.kind = Kind::Block;
  s.body = std::move(body);
  return s;
}

namespace {

bool eq(const std::vector<Expr>& a, const std::vector<Expr>& b);
bool eq(const std::vector<Stmt>& a, const std::vector<Stmt>& b);

bool eq(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::IntLit:
      return a.int_value == b.int_value;
    case Expr::Kind::FloatLit:
      return a.float_value == b.float_value;
    case Expr::Kind::Var:
      return a.name == b.name;
    case Expr::Kind::Unary:
      return a.un_op == b.un_op && eq(a.children, b.children);
    case Expr::Kind::Binary:
      return a.bin_op == b.bin_op && eq(a.children, b.children);
    case Expr::Kind::Call:
      return a.name == b.name && eq(a.children, b.children);
  }
  return false;
}

bool eq(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Stmt::Kind::Decl: {
      if (a.decl_type != b.decl_type || a.decls.size() != b.decls.size()) return false;
      for (size_t i = 0; i < a.decls.size(); ++i) {
        if (a.decls[i].name != b.decls[i].name) return false;
        if (!eq(a.decls[i].init, b.decls[i].init)) return false;
      }
      return true;
    }
    case Stmt::Kind::Assign:
      return a.target == b.target && eq(a.exprs, b.exprs);
    case Stmt::Kind::ExprStmt:
    case Stmt::Kind::Return:
      return eq(a.exprs, b.exprs);
    case Stmt::Kind::If:
      return a.has_else == b.has_else && eq(a.exprs, b.exprs) && eq(a.body, b.body) &&
             eq(a.else_body, b.else_body);
    case Stmt::Kind::While:
      return eq(a.exprs, b.exprs) && eq(a.body, b.body);
    case Stmt::Kind::For:
      return eq(a.init, b.init) && eq(a.exprs, b.exprs) && eq(a.step, b.step) &&
             eq(a.body, b.body);
    case Stmt::Kind::Scanf:
    case Stmt::Kind::Printf:
      return a.format == b.format && eq(a.exprs, b.exprs);
    case Stmt::Kind::Block:
      return eq(a.body, b.body);
  }
  return false;
}

bool eq(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!eq(a[i], b[i])) return false;
  return true;
}

bool eq(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!eq(a[i], b[i])) return false;
  return true;
}

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) { return eq(a, b); }
bool structurally_equal(const Stmt& a, const Stmt& b) { return eq(a, b); }

bool structurally_equal(const Program& a, const Program& b) {
  if (a.functions.size() != b.functions.size()) return false;
  for (size_t i = 0; i < a.functions.size(); ++i) {
    const Function& fa = a.functions[i];
    const Function& fb = b.functions[i];
    if (fa.return_type != fb.return_type || fa.name != fb.name) return false;
    if (fa.params.size() != fb.params.size()) return false;
    for (size_t j = 0; j < fa.params.size(); ++j)
      if (fa.params[j].type != fb.params[j].type || fa.params[j].name != fb.params[j].name)
        return false;
    if (!eq(fa.body, fb.body)) return false;
  }
  return true;
}

std::vector<std::string> variable_names(const Program& p) {
  std::vector<std::string> names;
  for (const auto& v : p.variables)
    if (std::find(names.begin(), names.end(), v.name) == names.end()) names.push_back(v.name);
  return names;
}

std::vector<std::pair<std::string, int>> count_identifier_occurrences(const Program& p) {
  std::map<std::string, int> counts;
  Program& mp = const_cast<Program&>(p);
  for (auto& f : mp.functions)
    for (auto& param : f.params) counts[param.name]++;
  for_each_stmt(mp, [&counts](Stmt& s) {
    if (s.kind == Stmt::Kind::Assign) counts[s.target]++;
    if (s.kind == Stmt::Kind::Decl)
      for (auto& d : s.decls) counts[d.name]++;
  });
  for_each_expr(mp, [&counts](Expr& e) {
    if (e.kind == Expr::Kind::Var) counts[e.name]++;
  });
  return {counts.begin(), counts.end()};
}

}  // namespace varmap::lang
