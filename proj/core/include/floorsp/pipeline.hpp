#ifndef FLOORSP_PIPELINE_HPP
#define FLOORSP_PIPELINE_HPP

#include "floorsp/descent.hpp"
#include "floorsp/merge.hpp"
#include "floorsp/plan_io.hpp"

namespace floorsp {

struct ReconstructOptions {
  Weights weights;
  DescentOptions descent;
  MergeOptions merge;
};

struct Reconstruction {
  DescentResult descent;
  Floorplan floorplan;  // merged loops and graph; unsolved rooms are left out
};

/// Frames, room-wise descent and merging on one set of likelihood maps.
Reconstruction reconstruct(const LikelihoodBundle& maps, const ReconstructOptions& options = {});

}  // namespace floorsp

#endif  // FLOORSP_PIPELINE_HPP
