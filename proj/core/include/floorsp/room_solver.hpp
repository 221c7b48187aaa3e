#ifndef FLOORSP_ROOM_SOLVER_HPP
#define FLOORSP_ROOM_SOLVER_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "floorsp/dominant_dirs.hpp"
#include "floorsp/energy.hpp"
#include "floorsp/geometry.hpp"
#include "floorsp/likelihood.hpp"

namespace floorsp {

struct CornerCandidate {
  Pixel position;
  float score = 0.0f;
};

/// Peaks of the corner map inside `box`.
///
/// A pixel is a peak when it reaches `threshold` and no pixel within
/// `nms_radius` (Chebyshev) is larger. Connected plateaus of peaks collapse
/// to the member nearest their centroid, then candidates are suppressed
/// greedily (score descending, position ascending) within `nms_radius`.
std::vector<CornerCandidate> detect_corner_candidates(const Grid2D& corner, const BoundingBox& box,
                                                      int nms_radius = 3, float threshold = 0.5f);

struct StartEdge {
  Pixel a;
  Pixel b;
  double score = 0.0;
};

/// Cut through the start-edge midpoint, perpendicular to it, from a point
/// inside the room segment to the box boundary.
struct StartLine {
  Vec2 inner;
  Vec2 outer;
};

/// Builds the cut for an edge. The inward side is the one facing the
/// segment's centroid; the cut starts at the last segment pixel of the first
/// run met walking inward from the midpoint. Empty when that walk never
/// meets the segment.
std::optional<StartLine> make_start_line(Pixel a, Pixel b, const BinaryMask& room, const BoundingBox& box);

/// Picks the start-edge among candidate pairs whose direction is admitted by
/// the alphabet, whose trace avoids the room segment and whose inward
/// perpendicular reaches it. Score is the mean edge likelihood along the
/// trace times the fraction of trace pixels with the segment within
/// `kCoverageDepth` pixels inward. Ties: longer edge, then smaller
/// endpoints. Empty when no pair qualifies.
std::optional<StartEdge> select_start_edge(std::span<const CornerCandidate> candidates, const Grid2D& edge_map,
                                           const BinaryMask& room, const DirectionAlphabet& alphabet,
                                           const BoundingBox& box);

inline constexpr double kCoverageDepth = 12.0;

/// Per-pixel costs of one coordinate-descent step, with every other loop
/// held fixed.
///
/// corner_cost(p) = w1/2 (1 - corner(p)) + w4/2 (1 - used_as_corner(p))
/// trace_cost(p)  = w2 (1 - edge(p)) + w3 inside_segment(p) + w5 (1 - used_as_edge(p))
///
/// Halving the corner-consistency weight per endpoint makes the sum over a
/// loop's edges charge each corner exactly once.
class EdgeCostModel {
 public:
  EdgeCostModel(const EnergyModel& energy, std::span<const Loop* const> other_loops);

  double corner_cost(Pixel p) const { return corner_cost_[index(p)]; }
  double trace_cost(Pixel p) const { return trace_cost_[index(p)]; }
  double complexity() const { return complexity_; }
  int width() const { return width_; }
  int height() const { return height_; }

  /// Weight of the directed edge from -> to (both on the grid).
  double edge_weight(Pixel from, Pixel to) const;
  /// Sum of edge weights around a closed loop.
  double loop_weight(const Loop& loop) const;

 private:
  std::size_t index(Pixel p) const {
    return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(p.x);
  }

  int width_ = 0;
  int height_ = 0;
  double complexity_ = 0.0;
  std::vector<double> corner_cost_;
  std::vector<double> trace_cost_;
};

/// Implicit per-room graph: every pixel of `box` is a node, and for every
/// alphabet direction d and t >= 1 there is an edge p -> p + round(t d)
/// while the target stays in the box. Edges touching the start-line are
/// absent.
class RoomGraph {
 public:
  RoomGraph(const BoundingBox& box, const DirectionAlphabet& alphabet, std::optional<StartLine> cut,
            const EdgeCostModel& costs);

  const BoundingBox& box() const { return box_; }
  bool crosses_cut(Pixel from, Pixel to) const;

  /// Calls f(to, weight) for every out-edge of `from`.
  template <typename F>
  void for_each_edge(Pixel from, F&& f) const;

  std::size_t edge_count() const;

 private:
  struct Ray {
    bool lattice = false;                    // axis direction: traces nest
    Pixel step;                              // unit step for lattice rays
    std::vector<Pixel> offsets;              // distinct round(t d), increasing t
    std::vector<std::vector<Pixel>> traces;  // non-lattice: trace offsets without target
  };

  BoundingBox box_;
  std::optional<StartLine> cut_;
  const EdgeCostModel* costs_;
  std::vector<Ray> rays_;
};

struct PathResult {
  std::vector<Pixel> nodes;
  double weight = 0.0;
};

/// Dijkstra from source to target; ties settle the smaller node index first.
std::optional<PathResult> shortest_path(const RoomGraph& graph, Pixel source, Pixel target);

/// Drops interior path nodes where the path continues straight on.
std::vector<Pixel> fuse_straight_nodes(const std::vector<Pixel>& nodes);

enum class Fallback : std::uint8_t { kNone, kSmallSegment, kNoStartEdge, kNoPath };
std::string_view to_string(Fallback f);

struct SolverOptions {
  int nms_radius = 3;
  float nms_threshold = 0.5f;
  int dilation_iterations = 10;
  int box_margin = 5;
  double direction_tolerance = kDefaultDirectionTolerance;
  std::size_t min_segment_pixels = 9;
  int fallback_margin = 3;
};

struct RoomSolution {
  Loop loop;
  Fallback fallback = Fallback::kNone;
  std::optional<StartEdge> start_edge;
  double path_weight = 0.0;
  double start_edge_weight = 0.0;
  DirectionAlphabet alphabet;
  BoundingBox box;
};

/// Search box of a room: its segment dilated, then boxed with a margin.
BoundingBox room_search_box(const BinaryMask& segment, const SolverOptions& options);

/// Rectangle around the segment's bounding box grown by `margin`.
Loop fallback_loop(const BinaryMask& segment, int margin);

/// Best loop through a fixed start-edge: shortest path a -> b on the cut
/// graph, closed by b -> a. Empty when b is unreachable.
std::optional<RoomSolution> solve_with_start_edge(const RoomGraph& graph, const EdgeCostModel& costs,
                                                  const StartEdge& edge);

/// Inputs of one coordinate-descent step for room `room`.
struct RoomProblem {
  int room = 0;
  const EnergyModel* energy = nullptr;
  std::span<const std::optional<Loop>> loops;       // current state, by room
  std::span<const std::vector<int>> frames;         // frames each solved loop used
  const DirectionIntegral* directions = nullptr;
  std::array<ManhattanFrame, kFrameCount> global_frames{};
  SolverOptions options;
};

/// One full step: search box, alphabet, corner candidates, start-edge,
/// cut graph, shortest path. Falls back to the segment rectangle when the
/// segment is tiny, no start-edge qualifies, or no path exists.
RoomSolution solve_room(const RoomProblem& problem);

// ---------------------------------------------------------------------------

template <typename F>
void RoomGraph::for_each_edge(Pixel from, F&& f) const {
  const EdgeCostModel& c = *costs_;
  const double from_cost = c.corner_cost(from);
  for (const Ray& ray : rays_) {
    if (ray.lattice) {
      double trace = 0.0;
      Pixel prev = from;
      for (std::size_t t = 0; t < ray.offsets.size(); ++t) {
        const Pixel to = from + ray.offsets[t];
        if (!box_.contains(to)) break;
        if (cut_ && crosses_cut(from, to)) break;
        trace += c.trace_cost(prev);
        prev = to;
        f(to, from_cost + c.corner_cost(to) + trace + c.complexity());
      }
    } else {
      for (std::size_t t = 0; t < ray.offsets.size(); ++t) {
        const Pixel to = from + ray.offsets[t];
        if (!box_.contains(to)) break;
        if (cut_ && crosses_cut(from, to)) continue;
        double trace = 0.0;
        for (const Pixel o : ray.traces[t]) trace += c.trace_cost(from + o);
        f(to, from_cost + c.corner_cost(to) + trace + c.complexity());
      }
    }
  }
}

}  // namespace floorsp

#endif  // FLOORSP_ROOM_SOLVER_HPP
