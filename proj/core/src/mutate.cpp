#include <algorithm>
#include <map>
#include <set>

#include "varmap/mutate.hpp"
#include "varmap/parse.hpp"
#include "varmap/print.hpp"
#include "varmap/rng.hpp"

namespace varmap::mutate {

using lang::BinOp;
using lang::Declarator;
using lang::Expr;
using lang::Program;
using lang::Stmt;
using lang::UnOp;

namespace {

bool is_step_expr(const Expr& e) {
  return e.kind == Expr::Kind::Unary &&
         (e.un_op == UnOp::PreInc || e.un_op == UnOp::PostInc || e.un_op == UnOp::PreDec ||
          e.un_op == UnOp::PostDec);
}

UnOp toggled(UnOp op) {
  switch (op) {
    case UnOp::PreInc: return UnOp::PostInc;
    case UnOp::PostInc: return UnOp::PreInc;
    case UnOp::PreDec: return UnOp::PostDec;
    case UnOp::PostDec: return UnOp::PreDec;
    default: return op;
  }
}

}  // namespace

MutationResult mirror_comparisons(const Program& p) {
  MutationResult r{p, false};
  lang::for_each_expr(r.program, [&r](Expr& e) {
    if (e.kind == Expr::Kind::Binary && lang::is_comparison(e.bin_op)) {
      std::swap(e.children[0], e.children[1]);
      e.bin_op = lang::mirrored_op(e.bin_op);
      r.applied = true;
    }
  });
  if (r.applied) lang::analyze(r.program);
  return r;
}

MutationResult swap_if_else(const Program& p) {
  MutationResult r{p, false};
  lang::for_each_stmt(r.program, [&r](Stmt& s) {
    if (s.kind == Stmt::Kind::If && s.has_else) {
      s.exprs[0] = Expr::unary(UnOp::Not, std::move(s.exprs[0]));
      std::swap(s.body, s.else_body);
      r.applied = true;
    }
  });
  if (r.applied) lang::analyze(r.program);
  return r;
}

MutationResult mirror_incdec(const Program& p) {
  MutationResult r{p, false};
  lang::for_each_stmt(r.program, [&r](Stmt& s) {
    if (s.kind == Stmt::Kind::ExprStmt && is_step_expr(s.exprs[0])) {
      s.exprs[0].un_op = toggled(s.exprs[0].un_op);
      r.applied = true;
    }
  });
  if (r.applied) lang::analyze(r.program);
  return r;
}

namespace {

std::set<std::string> declared_names(const Stmt& s) {
  std::set<std::string> names;
  for (const auto& d : s.decls) names.insert(d.name);
  return names;
}

bool references_any(const Expr& e, const std::set<std::string>& names) {
  bool found = false;
  lang::detail::walk_exprs(const_cast<Expr&>(e), [&](Expr& x) {
    if (x.kind == Expr::Kind::Var && names.count(x.name)) found = true;
  });
  return found;
}

// Non-identity permutation of [0, n) when n > 1 (best effort).
std::vector<size_t> permutation(size_t n, Rng& rng) {
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  for (int attempt = 0; attempt < 16; ++attempt) {
    rng.shuffle(perm);
    for (size_t i = 0; i < n; ++i)
      if (perm[i] != i) return perm;
  }
  return perm;
}

}  // namespace

MutationResult reorder_decls(const Program& p, std::uint64_t seed) {
  MutationResult r{p, false};
  Rng rng(seed);
  lang::for_each_block(r.program, [&](std::vector<Stmt>& block) {
    size_t i = 0;
    while (i < block.size()) {
      if (block[i].kind != Stmt::Kind::Decl) {
        ++i;
        continue;
      }
      size_t end = i;
      std::set<std::string> run_names;
      while (end < block.size() && block[end].kind == Stmt::Kind::Decl) {
        auto names = declared_names(block[end]);
        run_names.insert(names.begin(), names.end());
        ++end;
      }
      // Reorderable only if no initializer depends on a name declared in
      // the same run.
      bool safe = true;
      for (size_t k = i; k < end; ++k)
        for (const auto& d : block[k].decls)
          for (const auto& init : d.init)
            if (references_any(init, run_names)) safe = false;

      if (safe) {
        for (size_t k = i; k < end; ++k) {
          auto& ds = block[k].decls;
          if (ds.size() > 1) {
            auto perm = permutation(ds.size(), rng);
            std::vector<Declarator> next(ds.size());
            for (size_t j = 0; j < ds.size(); ++j) next[j] = std::move(ds[perm[j]]);
            ds = std::move(next);
            r.applied = true;
          }
        }
        if (end - i > 1) {
          auto perm = permutation(end - i, rng);
          std::vector<Stmt> next(end - i);
          for (size_t j = 0; j < end - i; ++j) next[j] = std::move(block[i + perm[j]]);
          for (size_t j = 0; j < end - i; ++j) block[i + j] = std::move(next[j]);
          r.applied = true;
        }
      }
      i = end;
    }
  });
  if (r.applied) lang::analyze(r.program);
  return r;
}

namespace {

bool rewrite_fors(std::vector<Stmt>& stmts) {
  bool applied = false;
  std::vector<Stmt> out;
  out.reserve(stmts.size());
  for (auto& s : stmts) {
    applied |= rewrite_fors(s.body);
    applied |= rewrite_fors(s.else_body);
    if (s.kind == Stmt::Kind::For) {
      if (!s.init.empty()) out.push_back(std::move(s.init[0]));
      Expr cond = s.exprs.empty() ? Expr::int_lit(1) : std::move(s.exprs[0]);
      std::vector<Stmt> body = std::move(s.body);
      if (!s.step.empty()) body.push_back(std::move(s.step[0]));
      out.push_back(Stmt::while_stmt(std::move(cond), std::move(body)));
      applied = true;
    } else {
      out.push_back(std::move(s));
    }
  }
  stmts = std::move(out);
  return applied;
}

}  // namespace

MutationResult for_to_while(const Program& p) {
  MutationResult r{p, false};
  for (auto& f : r.program.functions) r.applied |= rewrite_fors(f.body);
  if (r.applied) lang::analyze(r.program);
  return r;
}

int MutationConfig::id() const {
  return (mirror_comparisons ? 1 : 0) | (swap_if_else ? 2 : 0) | (mirror_incdec ? 4 : 0) |
         (reorder_decls ? 8 : 0) | (for_to_while ? 16 : 0);
}

MutationConfig MutationConfig::from_id(int id) {
  MutationConfig c;
  c.mirror_comparisons = id & 1;
  c.swap_if_else = id & 2;
  c.mirror_incdec = id & 4;
  c.reorder_decls = id & 8;
  c.for_to_while = id & 16;
  return c;
}

MutationResult apply_config(const Program& p, const MutationConfig& cfg, std::uint64_t seed) {
  MutationResult r{p, false};
  auto chain = [&r](MutationResult next) {
    r.program = std::move(next.program);
    r.applied |= next.applied;
  };
  if (cfg.reorder_decls) chain(reorder_decls(r.program, seed));
  if (cfg.mirror_incdec) chain(mirror_incdec(r.program));
  if (cfg.mirror_comparisons) chain(mirror_comparisons(r.program));
  if (cfg.swap_if_else) chain(swap_if_else(r.program));
  if (cfg.for_to_while) chain(for_to_while(r.program));
  return r;
}

const char* bug_type_name(BugType t) {
  switch (t) {
    case BugType::Wco: return "wco";
    case BugType::Vm: return "vm";
    case BugType::Me: return "me";
  }
  return "?";
}

namespace {

lang::RenameMap identity_mapping(const Program& p) {
  lang::RenameMap m;
  for (const auto& name : lang::variable_names(p)) m.pairs.emplace_back(name, name);
  return m;
}

std::vector<Expr*> comparison_sites(Program& p) {
  std::vector<Expr*> sites;
  lang::for_each_expr(p, [&sites](Expr& e) {
    if (e.kind == Expr::Kind::Binary && lang::is_comparison(e.bin_op)) sites.push_back(&e);
  });
  return sites;
}

BuggyPair make_pair(const Program& original, Program buggy, BugType type,
                    std::string location) {
  BuggyPair pair;
  pair.correct = original;
  pair.mapping = identity_mapping(buggy);
  pair.buggy = std::move(buggy);
  pair.bug_type = type;
  pair.bug_location = std::move(location);
  return pair;
}

}  // namespace

std::vector<BuggyPair> inject_wco(const Program& mutant, const Program& original,
                                  const lang::TestSuite& suite, std::uint64_t seed,
                                  std::uint64_t step_limit) {
  static const BinOp kCmps[] = {BinOp::Lt, BinOp::Le, BinOp::Gt,
                                BinOp::Ge, BinOp::Eq, BinOp::Ne};
  std::vector<BuggyPair> out;
  Rng rng(seed);
  Program probe = mutant;
  size_t n_sites = comparison_sites(probe).size();
  for (size_t k = 0; k < n_sites; ++k) {
    Program candidate = mutant;
    Expr* site = comparison_sites(candidate)[k];
    BinOp replacement;
    do {
      replacement = kCmps[rng.next_int(6)];
    } while (replacement == site->bin_op);
    site->bin_op = replacement;
    lang::analyze(candidate);
    if (lang::passes_suite(candidate, suite, step_limit)) continue;
    out.push_back(make_pair(original, std::move(candidate), BugType::Wco,
                            "cmp#" + std::to_string(k)));
  }
  return out;
}

namespace {

// Variable reads: every Var expression except ++/-- operands; scanf
// arguments are writes and do not count.
void collect_reads(Expr& e, std::vector<Expr*>& out) {
  if (e.kind == Expr::Kind::Var) {
    out.push_back(&e);
    return;
  }
  if (is_step_expr(e)) return;
  for (auto& c : e.children) collect_reads(c, out);
}

std::vector<Expr*> read_sites(Program& p) {
  std::vector<Expr*> sites;
  for (auto& f : p.functions)
    lang::detail::walk_stmts(f.body, [&sites](Stmt& s) {
      if (s.kind == Stmt::Kind::Scanf) return;
      if (s.kind == Stmt::Kind::Decl) {
        for (auto& d : s.decls)
          for (auto& init : d.init) collect_reads(init, sites);
        return;
      }
      for (auto& e : s.exprs) collect_reads(e, sites);
    });
  return sites;
}

}  // namespace

std::vector<BuggyPair> inject_vm(const Program& mutant, const Program& original,
                                 const lang::TestSuite& suite, std::uint64_t seed,
                                 std::uint64_t step_limit) {
  std::vector<BuggyPair> out;
  Rng rng(seed);
  Program probe = mutant;
  size_t n_sites = read_sites(probe).size();
  for (size_t k = 0; k < n_sites; ++k) {
    Program candidate = mutant;
    Expr* site = read_sites(candidate)[k];
    const lang::VarInfo& info = candidate.variables[static_cast<size_t>(site->var_id)];

    // Same-function, same-type alternatives by name.
    std::vector<std::string> alternatives;
    auto [first, count] = candidate.function_var_range[static_cast<size_t>(info.function_index)];
    for (int v = first; v < first + count; ++v) {
      const lang::VarInfo& cand = candidate.variables[static_cast<size_t>(v)];
      if (cand.name != info.name && cand.type == info.type &&
          std::find(alternatives.begin(), alternatives.end(), cand.name) == alternatives.end())
        alternatives.push_back(cand.name);
    }
    if (alternatives.empty()) continue;
    site->name = alternatives[static_cast<size_t>(rng.next_int(static_cast<int>(alternatives.size())))];
    try {
      lang::analyze(candidate);
    } catch (const lang::semantic_error&) {
      continue;  // replacement not in scope at this point
    }
    if (lang::passes_suite(candidate, suite, step_limit)) continue;
    out.push_back(make_pair(original, std::move(candidate), BugType::Vm,
                            "read#" + std::to_string(k)));
  }
  return out;
}

namespace {

struct DeletionSite {
  enum class Kind { Statement, ForInit, ForStep };
  Kind kind = Kind::Statement;
  size_t ordinal = 0;  // pre-order statement ordinal, or for-loop ordinal
};

std::vector<DeletionSite> enumerate_deletions(Program& p) {
  // For-clause statements are handled through the loop rewrite, not as plain
  // block statements.
  std::set<const Stmt*> clause_stmts;
  lang::for_each_stmt(p, [&clause_stmts](Stmt& s) {
    if (s.kind == Stmt::Kind::For) {
      for (const auto& sub : s.init) clause_stmts.insert(&sub);
      for (const auto& sub : s.step) clause_stmts.insert(&sub);
    }
  });

  std::vector<DeletionSite> sites;
  size_t stmt_ordinal = 0;
  size_t for_ordinal = 0;
  lang::for_each_stmt(p, [&](Stmt& s) {
    if ((s.kind == Stmt::Kind::Assign || s.kind == Stmt::Kind::ExprStmt) &&
        !clause_stmts.count(&s))
      sites.push_back({DeletionSite::Kind::Statement, stmt_ordinal});
    if (s.kind == Stmt::Kind::For) {
      if (!s.init.empty()) sites.push_back({DeletionSite::Kind::ForInit, for_ordinal});
      if (!s.step.empty()) sites.push_back({DeletionSite::Kind::ForStep, for_ordinal});
      ++for_ordinal;
    }
    ++stmt_ordinal;
  });
  return sites;
}

// Applies one deletion in place and names the deleted clause.
std::string apply_deletion(Program& p, const DeletionSite& site) {
  if (site.kind == DeletionSite::Kind::Statement) {
    size_t ordinal = 0;
    Stmt* found = nullptr;
    lang::for_each_stmt(p, [&](Stmt& s) {
      if (ordinal == site.ordinal) found = &s;
      ++ordinal;
    });
    std::string location = "stmt:" + lang::print_stmt_line(*found);
    bool erased = false;
    auto erase_from = [&](std::vector<Stmt>& block) {
      if (erased) return;
      for (size_t i = 0; i < block.size(); ++i)
        if (&block[i] == found) {
          block.erase(block.begin() + static_cast<std::ptrdiff_t>(i));
          erased = true;
          return;
        }
    };
    for (auto& f : p.functions) {
      lang::for_each_block(f, erase_from);
      if (erased) break;
    }
    return location;
  }

  // For-clause deletion: that loop becomes a while without the clause.
  size_t for_ordinal = 0;
  Stmt* target_for = nullptr;
  lang::for_each_stmt(p, [&](Stmt& s) {
    if (s.kind == Stmt::Kind::For) {
      if (for_ordinal == site.ordinal) target_for = &s;
      ++for_ordinal;
    }
  });
  Stmt& s = *target_for;
  std::string location;
  std::vector<Stmt> replacement;
  if (site.kind == DeletionSite::Kind::ForInit) {
    location = "for-init:" + lang::print_stmt_line(s.init[0]);
    Expr cond = s.exprs.empty() ? Expr::int_lit(1) : std::move(s.exprs[0]);
    std::vector<Stmt> body = std::move(s.body);
    if (!s.step.empty()) body.push_back(std::move(s.step[0]));
    replacement.push_back(Stmt::while_stmt(std::move(cond), std::move(body)));
  } else {
    location = "for-step:" + lang::print_stmt_line(s.step[0]);
    if (!s.init.empty()) replacement.push_back(std::move(s.init[0]));
    Expr cond = s.exprs.empty() ? Expr::int_lit(1) : std::move(s.exprs[0]);
    replacement.push_back(Stmt::while_stmt(std::move(cond), std::move(s.body)));
  }
  bool spliced = false;
  auto splice_into = [&](std::vector<Stmt>& block) {
    if (spliced) return;
    for (size_t i = 0; i < block.size(); ++i)
      if (&block[i] == target_for) {
        block.erase(block.begin() + static_cast<std::ptrdiff_t>(i));
        block.insert(block.begin() + static_cast<std::ptrdiff_t>(i),
                     std::make_move_iterator(replacement.begin()),
                     std::make_move_iterator(replacement.end()));
        spliced = true;
        return;
      }
  };
  for (auto& f : p.functions) {
    lang::for_each_block(f, splice_into);
    if (spliced) break;
  }
  return location;
}

}  // namespace

std::vector<BuggyPair> inject_me(const Program& mutant, const Program& original,
                                 const lang::TestSuite& suite, std::uint64_t seed,
                                 std::uint64_t step_limit) {
  (void)seed;  // deletions are exhaustive and deterministic
  std::vector<BuggyPair> out;
  Program probe = mutant;
  std::vector<DeletionSite> sites = enumerate_deletions(probe);
  for (const auto& site : sites) {
    Program candidate = mutant;
    std::string location = apply_deletion(candidate, site);
    lang::analyze(candidate);
    if (lang::passes_suite(candidate, suite, step_limit)) continue;
    out.push_back(make_pair(original, std::move(candidate), BugType::Me,
                            "me:" + location));
  }
  return out;
}

}  // namespace varmap::mutate
