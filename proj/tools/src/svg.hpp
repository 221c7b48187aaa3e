#ifndef FLOORSP_TOOLS_SVG_HPP
#define FLOORSP_TOOLS_SVG_HPP

#include <optional>
#include <string>

#include "floorsp/grid.hpp"
#include "floorsp/plan_io.hpp"

namespace floorsp::cli {

struct SvgOptions {
  int scale = 3;                      // output pixels per grid pixel
  std::optional<Grid2D> underlay;     // drawn as gray squares beneath the plan
  float underlay_floor = 0.05f;       // underlay values below this are skipped
};

/// SVG 1.1 drawing of the room loops (one colour per room) and the merged
/// graph on top.
std::string render_svg(const Floorplan& plan, const SvgOptions& options = {});

}  // namespace floorsp::cli

#endif  // FLOORSP_TOOLS_SVG_HPP
