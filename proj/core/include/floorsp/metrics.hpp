#ifndef FLOORSP_METRICS_HPP
#define FLOORSP_METRICS_HPP

#include <string>
#include <utility>
#include <vector>

#include "floorsp/plan_io.hpp"

namespace floorsp {

struct PRResult {
  double precision = 1.0;
  double recall = 1.0;
  std::size_t matched = 0;
  std::size_t total_pred = 0;
  std::size_t total_gt = 0;

  static PRResult from_counts(std::size_t matched, std::size_t total_pred, std::size_t total_gt);
};

struct CornerMatch {
  PRResult result;
  std::vector<int> pred_to_gt;  // -1 when unmatched
};

/// GT corners in index order each take their closest unmatched prediction
/// within `radius` (ties: smaller index).
CornerMatch corner_pr(const std::vector<Pixel>& pred, const std::vector<Pixel>& gt, double radius = 10.0);

/// A predicted edge is correct when both endpoints are matched corners and
/// the ground truth has an edge between their matches.
PRResult edge_pr(const FloorplanGraph& pred, const FloorplanGraph& gt, const CornerMatch& corners);

struct RoomMatch {
  PRResult result;
  std::vector<int> pred_to_gt;  // -1 for failed rooms
};

/// A predicted room succeeds when its interior overlaps no other predicted
/// room and it is matched to a ground-truth room with IoU above `iou`
/// (greedy, best IoU first). Interiors are rasterised with fill_polygon on
/// a domain covering both plans.
RoomMatch room_pr(const std::vector<Loop>& pred, const std::vector<Loop>& gt, double iou = 0.7);

/// Intersection over union of two loop interiors.
double loop_iou(const Loop& a, const Loop& b);

/// Rooms sharing at least one graph edge. An edge belongs to a room when
/// both endpoints and its midpoint lie within 1 px of the room's boundary.
std::vector<std::vector<int>> room_neighbours(const FloorplanGraph& graph, const std::vector<Loop>& loops);

/// Room succeeds when it passed room_pr and the matches of its successful
/// neighbours are exactly the neighbours of its ground-truth room.
PRResult room_plus_plus_pr(const RoomMatch& rooms, const std::vector<std::vector<int>>& pred_neighbours,
                           const std::vector<std::vector<int>>& gt_neighbours, std::size_t total_gt);

struct MetricsTable {
  PRResult corner;
  PRResult edge;
  PRResult room;
  PRResult room_plus_plus;
};

MetricsTable evaluate(const Floorplan& pred, const Floorplan& gt);

std::string format_table(const MetricsTable& table);
std::string format_csv(const MetricsTable& table);

}  // namespace floorsp

#endif  // FLOORSP_METRICS_HPP
