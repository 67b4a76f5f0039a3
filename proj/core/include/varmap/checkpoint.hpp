#pragma once

// Versioned binary checkpoint: named parameter tensors as raw 64-bit floats,
// with the node-kind vocabulary and edge configuration embedded so stale
// checkpoints are rejected at load time.

#include <stdexcept>
#include <string>

#include "varmap/model.hpp"

namespace varmap::model {

struct checkpoint_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void save_checkpoint(const std::string& path, const ModelParams& params,
                     const std::string& meta_json = "{}");

struct LoadedCheckpoint {
  ModelParams params;
  std::string meta_json;
};

LoadedCheckpoint load_checkpoint(const std::string& path);

}  // namespace varmap::model
