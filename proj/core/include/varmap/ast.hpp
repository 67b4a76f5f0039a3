#pragma once

// Mini-C abstract syntax: programs, functions, statements, expressions.
// Nodes are plain value types (copy = deep clone). analyze() attaches the
// variable table and resolves every identifier occurrence to a variable id.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace varmap::lang {

enum class Type { Int, Float, Void };

const char* type_name(Type t);

enum class BinOp { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, And, Or };
enum class UnOp { Neg, Not, PreInc, PostInc, PreDec, PostDec };

bool is_comparison(BinOp op);

// Mirror operator for operand-swapped comparisons: < <-> >, <= <-> >=,
// == and != map to themselves. Only valid for comparison operators.
BinOp mirrored_op(BinOp op);

const char* bin_op_token(BinOp op);
const char* un_op_token(UnOp op);

struct Expr {
  enum class Kind { IntLit, FloatLit, Var, Unary, Binary, Call };

  Kind kind = Kind::IntLit;
  long long int_value = 0;
  double float_value = 0.0;
  std::string name;            // Var / Call
  BinOp bin_op = BinOp::Add;   // Binary
  UnOp un_op = UnOp::Neg;      // Unary
  std::vector<Expr> children;  // Unary: [operand]; Binary: [lhs, rhs]; Call: args
  int var_id = -1;             // Var; filled by analyze()

  static Expr int_lit(long long v);
  static Expr float_lit(double v);
  static Expr var(std::string name);
  static Expr unary(UnOp op, Expr operand);
  static Expr binary(BinOp op, Expr lhs, Expr rhs);
  static Expr call(std::string name, std::vector<Expr> args);
};

struct Declarator {
  std::string name;
  std::vector<Expr> init;  // empty or one initializer
  int var_id = -1;
};

struct Stmt {
  enum class Kind { Decl, Assign, ExprStmt, If, While, For, Scanf, Printf, Return, Block };

  Kind kind = Kind::ExprStmt;

  // Decl
  Type decl_type = Type::Int;
  std::vector<Declarator> decls;

  // Assign
  std::string target;
  int target_var_id = -1;

  // Assign: [value]; ExprStmt: [e]; If/While: [cond]; For: [cond] or empty
  // (empty condition means "always true"); Return: [] or [e];
  // Printf: argument exprs; Scanf: Var exprs (the `&` is syntax only).
  std::vector<Expr> exprs;

  // Scanf/Printf format text, unescaped (holds real '\n' bytes etc).
  std::string format;

  std::vector<Stmt> init;       // For: 0..1 statements (Assign or ExprStmt)
  std::vector<Stmt> step;       // For: 0..1 statements
  std::vector<Stmt> body;       // If-then / While / For / Block
  std::vector<Stmt> else_body;  // If
  bool has_else = false;

  static Stmt decl(Type t, std::vector<Declarator> ds);
  static Stmt assign(std::string target, Expr value);
  static Stmt expr_stmt(Expr e);
  static Stmt if_stmt(Expr cond, std::vector<Stmt> then_body);
  static Stmt if_else(Expr cond, std::vector<Stmt> then_body, std::vector<Stmt> else_body);
  static Stmt while_stmt(Expr cond, std::vector<Stmt> body);
  static Stmt return_stmt();
  static Stmt return_value(Expr e);
  static Stmt block(std::vector<Stmt> body);
};

struct Param {
  Type type = Type::Int;
  std::string name;
  int var_id = -1;
};

struct Function {
  Type return_type = Type::Int;
  std::string name;
  std::vector<Param> params;
  std::vector<Stmt> body;
};

struct VarInfo {
  std::string name;
  Type type = Type::Int;
  int function_index = 0;
  int ordinal = 0;         // k-th same-named declaration within the function
  std::string qualified;   // e.g. "main::n"; ordinal > 0 appends "#k"
};

struct Program {
  std::vector<Function> functions;

  // Filled by analyze(); declaration order (params first, then body decls).
  std::vector<VarInfo> variables;
  std::vector<std::pair<int, int>> function_var_range;  // {first, count} per function
  bool analyzed = false;
};

// Structural comparison by shape, names and literal values; resolved ids and
// analysis results are ignored.
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Stmt& a, const Stmt& b);
bool structurally_equal(const Program& a, const Program& b);

inline bool operator==(const Expr& a, const Expr& b) { return structurally_equal(a, b); }
inline bool operator==(const Stmt& a, const Stmt& b) { return structurally_equal(a, b); }
inline bool operator==(const Program& a, const Program& b) { return structurally_equal(a, b); }

// Distinct variable names in first-declaration order.
std::vector<std::string> variable_names(const Program& p);

// Every identifier mention: Var exprs, assignment targets, scanf arguments,
// declarator names and parameters.
std::vector<std::pair<std::string, int>> count_identifier_occurrences(const Program& p);

namespace detail {

template <class F>
void walk_exprs(Expr& e, F&& fn) {
  fn(e);
  for (auto& c : e.children) walk_exprs(c, fn);
}

template <class F>
void walk_exprs(Stmt& s, F&& fn) {
  for (auto& d : s.decls)
    for (auto& e : d.init) walk_exprs(e, fn);
  for (auto& e : s.exprs) walk_exprs(e, fn);
  for (auto* part : {&s.init, &s.step, &s.body, &s.else_body})
    for (auto& sub : *part) walk_exprs(sub, fn);
}

template <class F>
void walk_stmts(std::vector<Stmt>& stmts, F&& fn) {
  for (auto& s : stmts) {
    fn(s);
    walk_stmts(s.init, fn);
    walk_stmts(s.step, fn);
    walk_stmts(s.body, fn);
    walk_stmts(s.else_body, fn);
  }
}

}  // namespace detail

// Pre-order visit of every expression in the program (mutable).
template <class F>
void for_each_expr(Program& p, F&& fn) {
  for (auto& f : p.functions)
    for (auto& s : f.body) detail::walk_exprs(s, fn);
}

// Pre-order visit of every statement in the program (mutable).
template <class F>
void for_each_stmt(Program& p, F&& fn) {
  for (auto& f : p.functions) detail::walk_stmts(f.body, fn);
}

// Every statement list that forms a block scope: function bodies, if/else
// branches, loop bodies and bare blocks. For-init/step clauses are excluded.
template <class F>
void for_each_block(Function& f, F&& fn) {
  fn(f.body);
  detail::walk_stmts(f.body, [&fn](Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::If:
        fn(s.body);
        if (s.has_else) fn(s.else_body);
        break;
      case Stmt::Kind::While:
      case Stmt::Kind::For:
      case Stmt::Kind::Block:
        fn(s.body);
        break;
      default:
        break;
    }
  });
}

template <class F>
void for_each_block(Program& p, F&& fn) {
  for (auto& f : p.functions) for_each_block(f, fn);
}

}  // namespace varmap::lang
