#pragma once

#include <optional>
#include <string>

#include "lembed/embedding.hpp"
#include "lembed/feasibility.hpp"

namespace lembed {

struct PipelineResult {
  ConstrainedSets sets;
  Decision decision;
  std::optional<ConstrainedValues> values;
  std::optional<GapPartition> partition;
  std::optional<Embedding> embedding;
  /// Why a feasible decision produced no embedding.
  std::string note;

  Status status() const;
};

/// generate, decide, and when feasible build pi from the witness thresholds.
PipelineResult run_pipeline(const StepGraphon& g, int depth, bool build = true);

}  // namespace lembed
