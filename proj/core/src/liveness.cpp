#include "cogniview/liveness.hpp"

#include <algorithm>

namespace cogniview::analysis {

LivenessMap liveness(const Cfg& cfg, int capacity) {
  const std::size_t n = cfg.nodes.size();
  LivenessMap map;
  map.live_in.assign(n, {});
  map.live_out.assign(n, {});

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = n; i-- > 0;) {
      const CfgNode& node = cfg.nodes[i];
      NameSet out;
      for (const int s : node.succs) {
        const NameSet& in = map.live_in[static_cast<std::size_t>(s)];
        out.insert(in.begin(), in.end());
      }
      NameSet in = node.uses;
      for (const auto& v : out) {
        if (node.defs.count(v) == 0) in.insert(v);
      }
      if (out != map.live_out[i]) {
        map.live_out[i] = std::move(out);
        changed = true;
      }
      if (in != map.live_in[i]) {
        map.live_in[i] = std::move(in);
        changed = true;
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const CfgNode& node = cfg.nodes[i];
    if (node.kind == NodeKind::Entry || node.kind == NodeKind::Exit || !node.reachable) continue;
    const int live = static_cast<int>(map.live_in[i].size());
    map.peak_live = std::max(map.peak_live, live);
    if (live > capacity) map.overload_points.push_back(static_cast<int>(i));
  }
  return map;
}

LivenessMap liveness(const syntax::FunctionDef& fn, int capacity) {
  return liveness(build_cfg(fn, syntax::StmtPath{}), capacity);
}

}  // namespace cogniview::analysis
