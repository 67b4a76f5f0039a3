#pragma once

// Mapping-driven repair of the three bug classes. Candidates are generated
// in the correct program's namespace (buggy renamed by the mapping), then
// reverse-renamed and validated against the test suite under a wall-clock
// budget.

#include <cstdint>
#include <string>
#include <vector>

#include "varmap/interp.hpp"
#include "varmap/mapping.hpp"
#include "varmap/model.hpp"

namespace varmap::repair {

// (l OP r) -> (r OP' l); an involution on comparison expressions.
lang::Expr mirrored_expression(const lang::Expr& cmp);

// Candidate programs in the original buggy namespace, deterministic order.
// A mapping that cannot cover the buggy variables yields no candidates.
std::vector<lang::Program> repair_wco(const lang::Program& buggy, const lang::Program& correct,
                                      const model::VariableMapping& mapping);
std::vector<lang::Program> repair_vm(const lang::Program& buggy, const lang::Program& correct,
                                     const model::VariableMapping& mapping);
std::vector<lang::Program> repair_me(const lang::Program& buggy, const lang::Program& correct,
                                     const model::VariableMapping& mapping);

struct RepairOutcome {
  enum class Status { Fixed, Exhausted, Timeout };
  Status status = Status::Exhausted;
  std::string fixed_source;
  int mappings_tried = 0;
  int candidates_tried = 0;
  double elapsed_seconds = 0.0;

  bool fixed() const { return status == Status::Fixed; }
};

const char* status_name(RepairOutcome::Status s);

struct RepairConfig {
  double budget_seconds = 60.0;
  std::uint64_t step_limit = lang::kDefaultStepLimit;
  std::string debug_dir;  // when set, every tried candidate is written here
};

// Walks the mapping stream; per mapping tries WCO, then VM, then ME
// candidates, running the suite on each. Returns on the first candidate that
// passes the whole suite (re-verified from its printed source). The budget
// is checked between suite runs.
RepairOutcome repair(const lang::Program& buggy, const lang::Program& correct,
                     model::MappingStream& mappings, const lang::TestSuite& suite,
                     const RepairConfig& cfg = {});

}  // namespace varmap::repair
