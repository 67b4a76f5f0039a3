#pragma once

// Random well-formed program generator for property tests. Kept independent
// of the library's construction helpers where it matters: programs are
// emitted through the public AST factories only, with every variable
// reference drawn from names already in scope.

#include <string>
#include <vector>

#include "varmap/ast.hpp"
#include "varmap/parse.hpp"
#include "varmap/rng.hpp"

namespace astgen {

using namespace varmap;
using namespace varmap::lang;

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  Program program() {
    Program p;
    next_var_ = 0;
    int helpers = rng_.next_int(2);
    std::vector<std::string> helper_names;
    for (int h = 0; h < helpers; ++h) {
      helper_names.push_back("fn" + std::to_string(h));
      p.functions.push_back(function(helper_names.back(), rng_.next_int(3), {}));
    }
    p.functions.push_back(function("main", 0, helper_names));
    analyze(p);
    return p;
  }

 private:
  std::string fresh_name() { return "v" + std::to_string(next_var_++); }

  Function function(const std::string& name, int params, std::vector<std::string> callable) {
    (void)callable;
    Function f;
    f.return_type = name == "main" ? Type::Int : (rng_.next_int(2) ? Type::Void : Type::Int);
    f.name = name;
    std::vector<std::string> scope;
    for (int i = 0; i < params; ++i) {
      Param param;
      param.type = rng_.next_int(4) ? Type::Int : Type::Float;
      param.name = fresh_name();
      scope.push_back(param.name);
      f.params.push_back(std::move(param));
    }
    f.body = block(scope, 0);
    if (f.return_type == Type::Int) f.body.push_back(Stmt::return_value(Expr::int_lit(0)));
    return f;
  }

  std::vector<Stmt> block(std::vector<std::string> scope, int depth) {
    std::vector<Stmt> out;
    int decls = depth == 0 ? 1 + rng_.next_int(3) : rng_.next_int(2);
    if (decls > 0) {
      std::vector<Declarator> ds;
      for (int i = 0; i < decls; ++i) {
        Declarator d;
        d.name = fresh_name();
        if (rng_.next_int(2)) d.init.push_back(expr(scope, 1));
        scope.push_back(d.name);
        ds.push_back(std::move(d));
      }
      out.push_back(Stmt::decl(Type::Int, std::move(ds)));
    }
    int stmts = 1 + rng_.next_int(4);
    for (int i = 0; i < stmts; ++i) out.push_back(stmt(scope, depth));
    return out;
  }

  Stmt stmt(std::vector<std::string>& scope, int depth) {
    int pick = rng_.next_int(depth >= 2 ? 4 : 8);
    switch (pick) {
      case 0:
        if (!scope.empty())
          return Stmt::assign(choice(scope), expr(scope, 0));
        return Stmt::expr_stmt(expr(scope, 0));
      case 1:
        if (!scope.empty()) {
          UnOp op = rng_.next_int(2) ? (rng_.next_int(2) ? UnOp::PreInc : UnOp::PostInc)
                                     : (rng_.next_int(2) ? UnOp::PreDec : UnOp::PostDec);
          return Stmt::expr_stmt(Expr::unary(op, Expr::var(choice(scope))));
        }
        return Stmt::expr_stmt(expr(scope, 0));
      case 2: {
        Stmt s;
        s.kind = Stmt::Kind::Printf;
        s.format = "%d\n";
        s.exprs.push_back(expr(scope, 1));
        return s;
      }
      case 3:
        return Stmt::expr_stmt(expr(scope, 0));
      case 4:
        return Stmt::if_else(expr(scope, 0), block(scope, depth + 1), block(scope, depth + 1));
      case 5:
        return Stmt::if_stmt(expr(scope, 0), block(scope, depth + 1));
      case 6: {
        // Bounded counting loop over a fresh variable.
        std::string v = fresh_name();
        std::vector<Stmt> body;
        {
          auto inner = scope;
          inner.push_back(v);
          body = block(inner, depth + 1);
        }
        Stmt s;
        s.kind = Stmt::Kind::For;
        s.init.push_back(Stmt::assign(v, Expr::int_lit(0)));
        s.exprs.push_back(
            Expr::binary(BinOp::Lt, Expr::var(v), Expr::int_lit(1 + rng_.next_int(4))));
        s.step.push_back(Stmt::expr_stmt(Expr::unary(UnOp::PostInc, Expr::var(v))));
        s.body = std::move(body);
        std::vector<Stmt> out;
        std::vector<Declarator> ds(1);
        ds[0].name = v;
        out.push_back(Stmt::decl(Type::Int, std::move(ds)));
        out.push_back(std::move(s));
        return Stmt::block(std::move(out));
      }
      default:
        return Stmt::block(block(scope, depth + 1));
    }
  }

  std::string choice(const std::vector<std::string>& scope) {
    return scope[static_cast<size_t>(rng_.next_int(static_cast<int>(scope.size())))];
  }

  Expr expr(const std::vector<std::string>& scope, int depth) {
    int pick = rng_.next_int(depth >= 3 ? 2 : 6);
    if (pick == 0 || scope.empty()) return Expr::int_lit(rng_.next_int(100));
    if (pick == 1) return Expr::var(choice(scope));
    if (pick == 2) return Expr::unary(rng_.next_int(2) ? UnOp::Neg : UnOp::Not, expr(scope, depth + 1));
    static const BinOp kOps[] = {BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Lt,  BinOp::Le,
                                 BinOp::Gt,  BinOp::Ge,  BinOp::Eq,  BinOp::Ne, BinOp::And,
                                 BinOp::Or};
    BinOp op = kOps[rng_.next_int(static_cast<int>(std::size(kOps)))];
    return Expr::binary(op, expr(scope, depth + 1), expr(scope, depth + 1));
  }

  Rng rng_;
  int next_var_ = 0;
};

inline Program random_program(std::uint64_t seed) { return Generator(seed).program(); }

}  // namespace astgen
