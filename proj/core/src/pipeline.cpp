#include "floorsp/pipeline.hpp"

namespace floorsp {

Reconstruction reconstruct(const LikelihoodBundle& maps, const ReconstructOptions& options) {
  const EnergyModel energy(maps, options.weights);
  Reconstruction r;
  r.descent = run_descent(energy, options.descent);

  std::vector<Loop> loops;
  std::vector<int> ids;
  for (std::size_t i = 0; i < r.descent.state.loops.size(); ++i) {
    if (!r.descent.state.loops[i]) continue;
    loops.push_back(*r.descent.state.loops[i]);
    ids.push_back(static_cast<int>(i));
  }
  MergeResult merged = merge(loops, options.merge);
  for (std::size_t k = 0; k < loops.size(); ++k) r.floorplan.rooms.push_back({ids[k], merged.loops[k]});
  r.floorplan.graph = std::move(merged.graph);
  r.floorplan.width = maps.width();
  r.floorplan.height = maps.height();
  return r;
}

}  // namespace floorsp
