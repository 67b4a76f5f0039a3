#pragma once

// Consistent renaming of variables by name. A non-injective map is resolved
// by suffixing fresh disambiguators; the applied map records the actual
// name used per source name so a reverse rename restores the original.

#include <string>
#include <utility>
#include <vector>

#include "varmap/ast.hpp"

namespace varmap::lang {

struct RenameMap {
  // Ordered (source name -> target name); one entry per distinct source name.
  std::vector<std::pair<std::string, std::string>> pairs;

  const std::string* target_for(const std::string& source) const;
};

// Renames every occurrence of each mapped variable. The map's domain must
// cover all variable names of the program (throws semantic_error otherwise).
// `applied_out`, when given, receives the collision-free map actually used.
Program rename_forward(const Program& p, const RenameMap& map, RenameMap* applied_out = nullptr);

// Undoes a rename performed with `applied` (exact inverse).
Program rename_reverse(const Program& p, const RenameMap& applied);

}  // namespace varmap::lang
