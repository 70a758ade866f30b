#pragma once

#include <vector>

#include "cogniview/cfg.hpp"

namespace cogniview::analysis {

/// Per-node live-variable sets for one scope.
struct LivenessMap {
  std::vector<NameSet> live_in;
  std::vector<NameSet> live_out;
  /// Largest |live_in| over reachable statement nodes (entry/exit excluded).
  int peak_live = 0;
  /// Reachable statement nodes whose |live_in| exceeds the capacity.
  std::vector<int> overload_points;
};

/// Backward dataflow to the fixpoint
///   live_in(n)  = use(n) ∪ (live_out(n) \ def(n))
///   live_out(n) = ∪ live_in(s) over successors s.
LivenessMap liveness(const Cfg& cfg, int capacity);

/// Convenience: CFG of a function plus its liveness.
LivenessMap liveness(const syntax::FunctionDef& fn, int capacity);

}  // namespace cogniview::analysis
