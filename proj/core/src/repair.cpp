#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "varmap/parse.hpp"
#include "varmap/print.hpp"
#include "varmap/rename.hpp"
#include "varmap/repair.hpp"

namespace varmap::repair {

using lang::Expr;
using lang::Program;
using lang::Stmt;

lang::Expr mirrored_expression(const Expr& cmp) {
  Expr out = cmp;
  if (out.kind == Expr::Kind::Binary && lang::is_comparison(out.bin_op)) {
    std::swap(out.children[0], out.children[1]);
    out.bin_op = lang::mirrored_op(out.bin_op);
  }
  return out;
}

namespace {

struct RenamedPair {
  Program buggy;            // buggy in the correct program's namespace
  lang::RenameMap applied;  // to undo the rename on candidates
};

bool rename_pair(const Program& buggy, const model::VariableMapping& mapping,
                 RenamedPair& out) {
  try {
    out.buggy = lang::rename_forward(buggy, mapping.name_map(), &out.applied);
    return true;
  } catch (const lang::semantic_error&) {
    return false;
  }
}

// Canonical comparison key: orientation folded with its mirror so that
// `i <= n` and `n >= i` share one key.
struct CmpKey {
  std::string lhs;
  std::string rhs;
  lang::BinOp op;

  bool operator<(const CmpKey& o) const {
    if (lhs != o.lhs) return lhs < o.lhs;
    if (rhs != o.rhs) return rhs < o.rhs;
    return static_cast<int>(op) < static_cast<int>(o.op);
  }
};

struct CmpSite {
  size_t index = 0;  // position in the program's comparison-site list
  CmpKey key;
  bool mirrored = false;  // canonical orientation swapped the sides
};

std::vector<Expr*> comparison_sites(Program& p) {
  std::vector<Expr*> sites;
  lang::for_each_expr(p, [&sites](Expr& e) {
    if (e.kind == Expr::Kind::Binary && lang::is_comparison(e.bin_op)) sites.push_back(&e);
  });
  return sites;
}

std::vector<CmpSite> comparison_keys(Program& p) {
  std::vector<CmpSite> out;
  auto sites = comparison_sites(p);
  for (size_t i = 0; i < sites.size(); ++i) {
    const Expr& e = *sites[i];
    std::string l = lang::print_expr(e.children[0]);
    std::string r = lang::print_expr(e.children[1]);
    CmpSite site;
    site.index = i;
    if (std::make_pair(l, r) <= std::make_pair(r, l)) {
      site.key = {l, r, e.bin_op};
      site.mirrored = false;
    } else {
      site.key = {r, l, lang::mirrored_op(e.bin_op)};
      site.mirrored = true;
    }
    out.push_back(std::move(site));
  }
  return out;
}

}  // namespace

std::vector<Program> repair_wco(const Program& buggy, const Program& correct,
                                const model::VariableMapping& mapping) {
  RenamedPair renamed;
  if (!rename_pair(buggy, mapping, renamed)) return {};

  Program correct_copy = correct;
  std::vector<CmpSite> correct_keys = comparison_keys(correct_copy);
  std::vector<CmpSite> buggy_keys = comparison_keys(renamed.buggy);

  std::vector<Program> out;
  std::set<std::string> emitted;
  std::set<CmpKey> visited;  // correct-side keys in document order, deduplicated
  for (const auto& ck : correct_keys) {
    if (!visited.insert(ck.key).second) continue;
    for (const auto& bk : buggy_keys) {
      if (bk.key.lhs != ck.key.lhs || bk.key.rhs != ck.key.rhs) continue;
      if (bk.key.op == ck.key.op) continue;  // same operator, nothing to change
      Program candidate = renamed.buggy;
      Expr* site = comparison_sites(candidate)[bk.index];
      site->bin_op = bk.mirrored ? lang::mirrored_op(ck.key.op) : ck.key.op;
      lang::analyze(candidate);
      Program restored = lang::rename_reverse(candidate, renamed.applied);
      std::string text = lang::pretty_print(restored);
      if (emitted.insert(text).second) out.push_back(std::move(restored));
    }
  }
  return out;
}

namespace {

bool is_step_expr(const Expr& e) {
  using lang::UnOp;
  return e.kind == Expr::Kind::Unary &&
         (e.un_op == UnOp::PreInc || e.un_op == UnOp::PostInc || e.un_op == UnOp::PreDec ||
          e.un_op == UnOp::PostDec);
}

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

std::vector<Program> repair_vm(const Program& buggy, const Program& correct,
                               const model::VariableMapping& mapping) {
  RenamedPair renamed;
  if (!rename_pair(buggy, mapping, renamed)) return {};

  std::map<std::string, int> buggy_counts;
  for (const auto& [name, n] : lang::count_identifier_occurrences(renamed.buggy))
    buggy_counts[name] = n;
  std::map<std::string, int> correct_counts;
  for (const auto& [name, n] : lang::count_identifier_occurrences(correct))
    correct_counts[name] = n;

  std::vector<std::string> over;   // more occurrences in buggy
  std::vector<std::string> under;  // more occurrences in correct
  std::set<std::string> names;
  for (const auto& [name, n] : buggy_counts) names.insert(name);
  for (const auto& [name, n] : correct_counts) names.insert(name);
  for (const auto& name : names) {
    int b = buggy_counts.count(name) ? buggy_counts[name] : 0;
    int c = correct_counts.count(name) ? correct_counts[name] : 0;
    if (b > c) over.push_back(name);
    if (c > b) under.push_back(name);
  }

  std::vector<Program> out;
  std::set<std::string> emitted;
  size_t n_sites = read_sites(renamed.buggy).size();
  for (const auto& x : over) {
    for (const auto& y : under) {
      for (size_t k = 0; k < n_sites; ++k) {
        Program candidate = renamed.buggy;
        Expr* site = read_sites(candidate)[k];
        if (site->name != x) continue;
        site->name = y;
        try {
          lang::analyze(candidate);
        } catch (const lang::semantic_error&) {
          continue;  // y not visible at this occurrence
        }
        Program restored = lang::rename_reverse(candidate, renamed.applied);
        std::string text = lang::pretty_print(restored);
        if (emitted.insert(text).second) out.push_back(std::move(restored));
      }
    }
  }
  return out;
}

namespace {

// Statement multiset for the missing-expression search: assignments and
// expression statements, including for-loop init/step clauses.
std::vector<std::pair<std::string, const Stmt*>> countable_statements(Program& p) {
  std::vector<std::pair<std::string, const Stmt*>> out;
  lang::for_each_stmt(p, [&out](Stmt& s) {
    if (s.kind == Stmt::Kind::Assign || s.kind == Stmt::Kind::ExprStmt)
      out.emplace_back(lang::print_stmt_line(s), &s);
  });
  return out;
}

size_t count_blocks(Program& p) {
  size_t n = 0;
  lang::for_each_block(p, [&n](std::vector<Stmt>&) { ++n; });
  return n;
}

std::vector<Stmt>* block_at(Program& p, size_t ordinal) {
  std::vector<Stmt>* found = nullptr;
  size_t i = 0;
  lang::for_each_block(p, [&](std::vector<Stmt>& block) {
    if (i == ordinal) found = &block;
    ++i;
  });
  return found;
}

}  // namespace

std::vector<Program> repair_me(const Program& buggy, const Program& correct,
                               const model::VariableMapping& mapping) {
  RenamedPair renamed;
  if (!rename_pair(buggy, mapping, renamed)) return {};

  Program correct_copy = correct;
  std::map<std::string, int> buggy_counts;
  for (const auto& [text, stmt] : countable_statements(renamed.buggy)) buggy_counts[text]++;

  // Snippets: statement forms with a count surplus on the correct side, in
  // first-occurrence order.
  std::vector<const Stmt*> snippets;
  {
    std::map<std::string, int> correct_counts;
    std::set<std::string> taken;
    auto correct_stmts = countable_statements(correct_copy);
    for (const auto& [text, stmt] : correct_stmts) correct_counts[text]++;
    for (const auto& [text, stmt] : correct_stmts) {
      int have = buggy_counts.count(text) ? buggy_counts[text] : 0;
      if (correct_counts[text] > have && taken.insert(text).second) snippets.push_back(stmt);
    }
  }

  std::vector<Program> out;
  std::set<std::string> emitted;
  size_t blocks = count_blocks(renamed.buggy);
  for (const Stmt* snippet : snippets) {
    for (size_t b = 0; b < blocks; ++b) {
      size_t positions = block_at(renamed.buggy, b)->size() + 1;
      for (size_t pos = 0; pos < positions; ++pos) {
        Program candidate = renamed.buggy;
        std::vector<Stmt>* block = block_at(candidate, b);
        block->insert(block->begin() + static_cast<std::ptrdiff_t>(pos), *snippet);
        try {
          lang::analyze(candidate);
        } catch (const lang::semantic_error&) {
          continue;  // snippet references a variable that is out of scope here
        }
        Program restored = lang::rename_reverse(candidate, renamed.applied);
        std::string text = lang::pretty_print(restored);
        if (emitted.insert(text).second) out.push_back(std::move(restored));
      }
    }
  }
  return out;
}

const char* status_name(RepairOutcome::Status s) {
  switch (s) {
    case RepairOutcome::Status::Fixed: return "fixed";
    case RepairOutcome::Status::Exhausted: return "exhausted";
    case RepairOutcome::Status::Timeout: return "timeout";
  }
  return "?";
}

RepairOutcome repair(const Program& buggy, const Program& correct,
                     model::MappingStream& mappings, const lang::TestSuite& suite,
                     const RepairConfig& cfg) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  auto elapsed = [&start] {
    return std::chrono::duration<double>(clock::now() - start).count();
  };

  RepairOutcome outcome;
  int debug_index = 0;
  while (auto mapping = mappings.next()) {
    if (elapsed() >= cfg.budget_seconds) {
      outcome.status = RepairOutcome::Status::Timeout;
      outcome.elapsed_seconds = elapsed();
      return outcome;
    }
    ++outcome.mappings_tried;
    for (int kind = 0; kind < 3; ++kind) {
      std::vector<Program> candidates;
      switch (kind) {
        case 0: candidates = repair_wco(buggy, correct, *mapping); break;
        case 1: candidates = repair_vm(buggy, correct, *mapping); break;
        default: candidates = repair_me(buggy, correct, *mapping); break;
      }
      for (const Program& candidate : candidates) {
        if (elapsed() >= cfg.budget_seconds) {
          outcome.status = RepairOutcome::Status::Timeout;
          outcome.elapsed_seconds = elapsed();
          return outcome;
        }
        ++outcome.candidates_tried;
        if (!cfg.debug_dir.empty()) {
          std::filesystem::create_directories(cfg.debug_dir);
          std::ofstream(cfg.debug_dir + "/candidate_" + std::to_string(debug_index++) + ".c")
              << lang::pretty_print(candidate);
        }
        if (!lang::passes_suite(candidate, suite, cfg.step_limit)) continue;

        // Re-verify independently from the printed source.
        std::string text = lang::pretty_print(candidate);
        lang::Program reparsed = lang::parse(text);
        lang::TestReport report = lang::run_test_suite(reparsed, suite, cfg.step_limit);
        if (report.passed != report.total) continue;
        outcome.status = RepairOutcome::Status::Fixed;
        outcome.fixed_source = std::move(text);
        outcome.elapsed_seconds = elapsed();
        return outcome;
      }
    }
  }
  outcome.status = RepairOutcome::Status::Exhausted;
  outcome.elapsed_seconds = elapsed();
  return outcome;
}

}  // namespace varmap::repair
