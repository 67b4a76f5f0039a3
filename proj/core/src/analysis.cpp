#include <map>
#include <string>
#include <vector>

#include "varmap/parse.hpp"

namespace varmap::lang {

namespace {

struct Scope {
  std::map<std::string, int> names;  // name -> var id
};

class Analyzer {
 public:
  explicit Analyzer(Program& p) : p_(p) {}

  void run() {
    p_.variables.clear();
    p_.function_var_range.clear();

    bool has_main = false;
    for (auto& f : p_.functions) {
      if (f.name == "main") has_main = true;
      if (signatures_.count(f.name))
        throw semantic_error("duplicate function '" + f.name + "'");
      signatures_[f.name] = static_cast<int>(f.params.size());
    }
    if (!has_main) throw semantic_error("no function named 'main'");

    for (size_t i = 0; i < p_.functions.size(); ++i) {
      func_index_ = static_cast<int>(i);
      int first = static_cast<int>(p_.variables.size());
      analyze_function(p_.functions[i]);
      p_.function_var_range.emplace_back(first,
                                         static_cast<int>(p_.variables.size()) - first);
    }
    p_.analyzed = true;
  }

 private:
  int declare(const std::string& name, Type t) {
    if (scopes_.back().names.count(name))
      throw semantic_error("duplicate declaration of '" + name + "' in the same scope");
    int id = static_cast<int>(p_.variables.size());
    VarInfo info;
    info.name = name;
    info.type = t;
    info.function_index = func_index_;
    info.ordinal = same_name_count_[name]++;
    info.qualified = p_.functions[func_index_].name + "::" + name;
    if (info.ordinal > 0) info.qualified += "#" + std::to_string(info.ordinal);
    p_.variables.push_back(std::move(info));
    scopes_.back().names[name] = id;
    return id;
  }

  int resolve(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->names.find(name);
      if (found != it->names.end()) return found->second;
    }
    throw semantic_error("undeclared variable '" + name + "'");
  }

  void analyze_function(Function& f) {
    same_name_count_.clear();
    scopes_.clear();
    scopes_.emplace_back();
    for (auto& param : f.params) param.var_id = declare(param.name, param.type);
    analyze_block(f.body);
    scopes_.pop_back();
  }

  void analyze_block(std::vector<Stmt>& stmts) {
    for (auto& s : stmts) analyze_stmt(s);
  }

  void analyze_scoped_block(std::vector<Stmt>& stmts) {
    scopes_.emplace_back();
    analyze_block(stmts);
    scopes_.pop_back();
  }

  void analyze_stmt(Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Decl:
        for (auto& d : s.decls) {
          // Initializers resolve before the name is in scope, as in C for
          // our subset (no self-reference).
          for (auto& e : d.init) analyze_expr(e);
          d.var_id = declare(d.name, s.decl_type);
        }
        break;
      case Stmt::Kind::Assign:
        s.target_var_id = resolve(s.target);
        analyze_expr(s.exprs[0]);
        break;
      case Stmt::Kind::ExprStmt:
      case Stmt::Kind::Return:
        for (auto& e : s.exprs) analyze_expr(e);
        break;
      case Stmt::Kind::If:
        analyze_expr(s.exprs[0]);
        analyze_scoped_block(s.body);
        if (s.has_else) analyze_scoped_block(s.else_body);
        break;
      case Stmt::Kind::While:
        analyze_expr(s.exprs[0]);
        analyze_scoped_block(s.body);
        break;
      case Stmt::Kind::For:
        for (auto& sub : s.init) analyze_stmt(sub);
        for (auto& e : s.exprs) analyze_expr(e);
        for (auto& sub : s.step) analyze_stmt(sub);
        analyze_scoped_block(s.body);
        break;
      case Stmt::Kind::Scanf:
        for (auto& e : s.exprs) {
          if (e.kind != Expr::Kind::Var)
            throw semantic_error("scanf argument must be a variable");
          e.var_id = resolve(e.name);
        }
        break;
      case Stmt::Kind::Printf:
        for (auto& e : s.exprs) analyze_expr(e);
        break;
      case Stmt::Kind::Block:
        analyze_scoped_block(s.body);
        break;
    }
  }

  void analyze_expr(Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Var:
        e.var_id = resolve(e.name);
        break;
      case Expr::Kind::Call: {
        auto it = signatures_.find(e.name);
        if (it == signatures_.end())
          throw semantic_error("call to undefined function '" + e.name + "'");
        if (it->second != static_cast<int>(e.children.size()))
          throw semantic_error("wrong number of arguments to '" + e.name + "'");
        for (auto& c : e.children) analyze_expr(c);
        break;
      }
      default:
        for (auto& c : e.children) analyze_expr(c);
        break;
    }
  }

  Program& p_;
  std::map<std::string, int> signatures_;
  std::map<std::string, int> same_name_count_;
  std::vector<Scope> scopes_;
  int func_index_ = 0;
};

}  // namespace

void analyze(Program& p) { Analyzer(p).run(); }

}  // namespace varmap::lang
