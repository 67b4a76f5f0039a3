#include <map>
#include <set>

#include "varmap/parse.hpp"
#include "varmap/rename.hpp"

namespace varmap::lang {

const std::string* RenameMap::target_for(const std::string& source) const {
  for (const auto& [from, to] : pairs)
    if (from == source) return &to;
  return nullptr;
}

namespace {

Program apply_name_map(const Program& p, const std::map<std::string, std::string>& m) {
  Program out = p;
  for (auto& f : out.functions)
    for (auto& param : f.params) {
      auto it = m.find(param.name);
      if (it != m.end()) param.name = it->second;
    }
  for_each_stmt(out, [&m](Stmt& s) {
    if (s.kind == Stmt::Kind::Assign) {
      auto it = m.find(s.target);
      if (it != m.end()) s.target = it->second;
    }
    if (s.kind == Stmt::Kind::Decl)
      for (auto& d : s.decls) {
        auto it = m.find(d.name);
        if (it != m.end()) d.name = it->second;
      }
  });
  for_each_expr(out, [&m](Expr& e) {
    if (e.kind == Expr::Kind::Var) {
      auto it = m.find(e.name);
      if (it != m.end()) e.name = it->second;
    }
  });
  analyze(out);
  return out;
}

}  // namespace

Program rename_forward(const Program& p, const RenameMap& map, RenameMap* applied_out) {
  std::vector<std::string> names = variable_names(p);
  for (const auto& name : names)
    if (!map.target_for(name))
      throw semantic_error("rename map does not cover variable '" + name + "'");

  std::set<std::string> taken;
  for (const auto& name : names) taken.insert(*map.target_for(name));

  std::map<std::string, std::string> actual;
  std::set<std::string> used;
  RenameMap applied;
  for (const auto& name : names) {
    std::string to = *map.target_for(name);
    if (used.count(to)) {
      int k = 2;
      std::string candidate;
      do {
        candidate = to + "_" + std::to_string(k++);
      } while (used.count(candidate) || taken.count(candidate));
      to = candidate;
    }
    used.insert(to);
    actual[name] = to;
    applied.pairs.emplace_back(name, to);
  }
  if (applied_out) *applied_out = applied;
  return apply_name_map(p, actual);
}

Program rename_reverse(const Program& p, const RenameMap& applied) {
  std::map<std::string, std::string> inverse;
  for (const auto& [from, to] : applied.pairs) inverse[to] = from;
  return apply_name_map(p, inverse);
}

}  // namespace varmap::lang
