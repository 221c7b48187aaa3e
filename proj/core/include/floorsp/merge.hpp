#ifndef FLOORSP_MERGE_HPP
#define FLOORSP_MERGE_HPP

#include <span>
#include <utility>
#include <vector>

#include "floorsp/geometry.hpp"

namespace floorsp {

struct MergeOptions {
  double angle_tolerance = 5.0;   // degrees, colinear and parallel tests
  double offset_tolerance = 1.5;  // perpendicular offset for colinear edges
  double gap_tolerance = 3.0;     // endpoint gap along the line for contiguity
  double snap_distance = 5.0;     // parallel groups closer than this snap
  double corner_distance = 3.0;   // corners closer than this merge
  int max_passes = 8;
};

/// Edge i of loop `room` runs from corner i to corner i + 1.
struct EdgeRef {
  int room = 0;
  int edge = 0;
  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

struct SegmentGroup {
  std::vector<EdgeRef> members;  // sorted
  Vec2 point;                    // length-weighted mean of member midpoints
  Vec2 direction;                // unit
  double length = 0.0;           // summed member length
};

/// Partition of all non-degenerate loop edges into colinear, contiguous
/// groups (union of pairwise links).
std::vector<SegmentGroup> find_segment_groups(std::span<const Loop> loops, const MergeOptions& options = {});

/// Snaps parallel groups of different rooms whose maximum offset over their
/// overlapping extent is within the snap distance onto their midline,
/// longest pairs first, until no pair qualifies.
std::vector<Loop> snap_parallel_groups(std::vector<Loop> loops, const MergeOptions& options = {});

struct FloorplanGraph {
  std::vector<Pixel> vertices;                 // sorted, distinct
  std::vector<std::pair<int, int>> edges;      // i < j, sorted
  std::vector<std::vector<int>> edge_rooms;    // rooms whose walls use each edge
  std::vector<std::vector<int>> rooms;         // vertex cycle of each input loop, split vertices included
};

struct MergeResult {
  std::vector<Loop> loops;  // input loops with corners moved onto graph vertices
  FloorplanGraph graph;
};

/// Single-linkage clustering of all corners within the corner distance,
/// repeated on the cluster centres until no two are that close; each
/// cluster becomes its rounded centroid. Edges are split where another
/// vertex lies on them (within 1 px).
MergeResult merge_corners(std::span<const Loop> loops, const MergeOptions& options = {});

/// Wall snapping followed by corner merging, repeated until the loops stop
/// changing.
MergeResult merge(std::span<const Loop> loops, const MergeOptions& options = {});

/// Graph of loops taken as they are: corners become vertices, nothing moves.
FloorplanGraph build_graph(std::span<const Loop> loops);

/// Pairs of rooms (i < j) sharing at least one graph edge.
std::vector<std::pair<int, int>> room_adjacency(const FloorplanGraph& graph);

}  // namespace floorsp

#endif  // FLOORSP_MERGE_HPP
