#pragma once

// Recursive-descent front end for the mini-C subset. parse() returns a
// scope-checked Program: every variable occurrence carries its resolved
// declaration id and the program-wide variable table is populated.

#include <stdexcept>
#include <string>

#include "varmap/ast.hpp"

namespace varmap::lang {

struct parse_error : std::runtime_error {
  int line = 0;
  int col = 0;
  parse_error(int line, int col, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
};

// Name resolution failures: undeclared variable, duplicate declaration in the
// same scope, missing main, unknown callee, arity mismatch.
struct semantic_error : std::runtime_error {
  explicit semantic_error(const std::string& msg)
      : std::runtime_error("semantic error: " + msg) {}
};

Program parse(const std::string& source);

// Resolve identifiers and (re)build the variable table. Throws semantic_error.
// Called by parse(); call again after editing an AST in place.
void analyze(Program& p);

}  // namespace varmap::lang
