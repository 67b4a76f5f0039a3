#pragma once

// Lazy streams of candidate variable mappings. The model stream enumerates
// assignments in non-increasing joint probability (product of independent
// row choices); the baseline stream walks all assignments in a seeded random
// order. Neither emits duplicates and both exhaust all |B|^|A| assignments.

#include <cstdint>
#include <memory>
#include <optional>

#include "varmap/model.hpp"

namespace varmap::model {

class MappingStream {
 public:
  virtual ~MappingStream() = default;
  virtual std::optional<VariableMapping> next() = 0;
};

// Best-first over the probability matrix of `predicted`. The first element
// equals the argmax assignment. Joint-probability ties resolve to the
// lexicographically smallest per-row rank vector, which prefers lower
// correct-variable indices.
std::unique_ptr<MappingStream> enumerate_mappings(VariableMapping predicted);

// Same contract with uniform rows; order is a seeded permutation of all
// assignments. Streams larger than 2^62 assignments are truncated there.
std::unique_ptr<MappingStream> uniform_mappings(const graph::ProgramGraph& buggy_graph,
                                                const graph::ProgramGraph& correct_graph,
                                                std::uint64_t seed);

// Yields exactly one mapping (ground-truth / oracle use).
std::unique_ptr<MappingStream> single_mapping(VariableMapping m);

}  // namespace varmap::model
