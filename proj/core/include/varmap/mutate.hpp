#pragma once

// Semantics-preserving program mutations (five families, 31 non-empty
// combinations) and the three bug injectors. Injected candidates are kept
// only when they fail the program's test suite.

#include <cstdint>
#include <string>
#include <vector>

#include "varmap/ast.hpp"
#include "varmap/interp.hpp"
#include "varmap/rename.hpp"

namespace varmap::mutate {

struct MutationResult {
  lang::Program program;
  bool applied = false;  // false: no applicable site, program returned unchanged
};

// e1 OP e2 -> e2 OP' e1 at every comparison site.
MutationResult mirror_comparisons(const lang::Program& p);
// if (c) {A} else {B} -> if (!c) {B} else {A}; ifs without else are skipped.
MutationResult swap_if_else(const lang::Program& p);
// i++ <-> ++i (and --) at statement positions, including for-loop steps.
MutationResult mirror_incdec(const lang::Program& p);
// Permutes declaration runs and declarator lists; skips runs whose
// initializers reference names declared in the same run.
MutationResult reorder_decls(const lang::Program& p, std::uint64_t seed);
// for (init; cond; step) body -> init; while (cond) { body; step; }
MutationResult for_to_while(const lang::Program& p);

struct MutationConfig {
  bool mirror_comparisons = false;
  bool swap_if_else = false;
  bool mirror_incdec = false;
  bool reorder_decls = false;
  bool for_to_while = false;

  // Bitmask identity, 1..31.
  int id() const;
  static MutationConfig from_id(int id);
};

inline constexpr int kNumMutationConfigs = 31;

// Applies the enabled families in canonical order: reorder-decls,
// mirror-incdec, mirror-comparisons, swap-if-else, for-to-while.
MutationResult apply_config(const lang::Program& p, const MutationConfig& cfg,
                            std::uint64_t seed);

enum class BugType { Wco, Vm, Me };
const char* bug_type_name(BugType t);

struct BuggyPair {
  lang::Program correct;       // the original, unmutated program
  lang::Program buggy;         // mutant with one bug injected
  lang::RenameMap mapping;     // buggy variable name -> correct variable name
  BugType bug_type = BugType::Wco;
  std::string bug_location;
  int mutation_config_id = 0;
};

// One candidate per comparison site, replacing the operator with a different
// random comparison operator.
std::vector<BuggyPair> inject_wco(const lang::Program& mutant, const lang::Program& original,
                                  const lang::TestSuite& suite, std::uint64_t seed,
                                  std::uint64_t step_limit = lang::kDefaultStepLimit);

// One candidate per read occurrence, replacing the variable with another
// in-scope, type-compatible variable.
std::vector<BuggyPair> inject_vm(const lang::Program& mutant, const lang::Program& original,
                                 const lang::TestSuite& suite, std::uint64_t seed,
                                 std::uint64_t step_limit = lang::kDefaultStepLimit);

// One candidate per deletable statement: expression statements, assignments,
// and for-loop init/step clauses (the loop is rewritten to while form first).
std::vector<BuggyPair> inject_me(const lang::Program& mutant, const lang::Program& original,
                                 const lang::TestSuite& suite, std::uint64_t seed,
                                 std::uint64_t step_limit = lang::kDefaultStepLimit);

}  // namespace varmap::mutate
