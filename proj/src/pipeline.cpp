#include "lembed/pipeline.hpp"

namespace lembed {

Status PipelineResult::status() const {
  if (decision.outcome.status == Status::Feasible && !note.empty()) return Status::Inconclusive;
  return decision.outcome.status;
}

PipelineResult run_pipeline(const StepGraphon& g, int depth, bool build) {
  PipelineResult r;
  r.sets = generate(g, depth);
  r.decision = decide(r.sets);
  if (!build || r.decision.outcome.status != Status::Feasible) return r;
  const auto& d = *r.decision.outcome.witness_d;
  try {
    r.values = assign_constrained(r.sets, d);
    r.partition = gap_classes(r.sets, g);
    r.embedding = build_pi(r.sets, g, d, *r.values, *r.partition);
  } catch (const ContradictionError& e) {
    if (r.sets.complete) throw;
    r.embedding.reset();
    r.note = e.what();
  }
  return r;
}

}  // namespace lembed
