#ifndef FLOORSP_LIKELIHOOD_HPP
#define FLOORSP_LIKELIHOOD_HPP

#include <vector>

#include "floorsp/grid.hpp"

namespace floorsp {

/// Number of wall-direction bins; bin k covers angle 10*k degrees.
inline constexpr int kDirectionBins = 36;
inline constexpr int kDirectionBinDegrees = 10;

/// Per-pixel evidence consumed by the optimiser.
struct LikelihoodBundle {
  Grid2D corner;
  Grid2D edge;
  std::vector<Grid2D> direction;      // kDirectionBins channels
  std::vector<BinaryMask> segments;   // one rough mask per room

  int width() const { return corner.width(); }
  int height() const { return corner.height(); }
};

/// Union of all room segments.
BinaryMask segments_union(const LikelihoodBundle& maps);

}  // namespace floorsp

#endif  // FLOORSP_LIKELIHOOD_HPP
