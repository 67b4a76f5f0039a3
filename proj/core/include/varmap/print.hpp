#pragma once

// Canonical source renderer. parse(pretty_print(p)) is structurally equal to
// p, and pretty_print is a fixpoint over parse ∘ pretty_print.

#include <string>

#include "varmap/ast.hpp"

namespace varmap::lang {

std::string pretty_print(const Program& p);
std::string print_expr(const Expr& e);
std::string print_stmt_line(const Stmt& s);  // single statement, no indent/newline

}  // namespace varmap::lang
