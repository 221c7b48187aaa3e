#include "floorsp/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <set>
#include <tuple>

namespace floorsp {

PRResult PRResult::from_counts(std::size_t matched, std::size_t total_pred, std::size_t total_gt) {
  PRResult r;
  r.matched = matched;
  r.total_pred = total_pred;
  r.total_gt = total_gt;
  r.precision = total_pred ? static_cast<double>(matched) / total_pred : 1.0;
  r.recall = total_gt ? static_cast<double>(matched) / total_gt : 1.0;
  return r;
}

CornerMatch corner_pr(const std::vector<Pixel>& pred, const std::vector<Pixel>& gt, double radius) {
  CornerMatch m;
  m.pred_to_gt.assign(pred.size(), -1);
  std::size_t matched = 0;
  for (std::size_t g = 0; g < gt.size(); ++g) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < pred.size(); ++p) {
      if (m.pred_to_gt[p] >= 0) continue;
      const double d = distance(pred[p], gt[g]);
      if (d <= radius && d < best_d) {
        best = static_cast<int>(p);
        best_d = d;
      }
    }
    if (best >= 0) {
      m.pred_to_gt[best] = static_cast<int>(g);
      ++matched;
    }
  }
  m.result = PRResult::from_counts(matched, pred.size(), gt.size());
  return m;
}

PRResult edge_pr(const FloorplanGraph& pred, const FloorplanGraph& gt, const CornerMatch& corners) {
  std::set<std::pair<int, int>> gt_edges;
  for (const auto& [i, j] : gt.edges) gt_edges.insert({std::min(i, j), std::max(i, j)});
  std::set<std::pair<int, int>> used;
  std::size_t matched = 0;
  for (const auto& [i, j] : pred.edges) {
    const int a = corners.pred_to_gt.at(i);
    const int b = corners.pred_to_gt.at(j);
    if (a < 0 || b < 0) continue;
    const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
    if (gt_edges.count(key) && used.insert(key).second) ++matched;
  }
  return PRResult::from_counts(matched, pred.edges.size(), gt_edges.size());
}

namespace {

struct Domain {
  Pixel origin;
  int width = 1;
  int height = 1;
};

Domain covering_domain(const std::vector<const Loop*>& loops) {
  Pixel lo{std::numeric_limits<int>::max(), std::numeric_limits<int>::max()};
  Pixel hi{std::numeric_limits<int>::min(), std::numeric_limits<int>::min()};
  bool any = false;
  for (const Loop* l : loops) {
    for (const Pixel p : l->corners) {
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
      any = true;
    }
  }
  if (!any) return {};
  return {lo, hi.x - lo.x + 1, hi.y - lo.y + 1};
}

BinaryMask interior(const Loop& loop, const Domain& d) {
  std::vector<Pixel> shifted;
  for (const Pixel p : loop.corners) shifted.push_back(p - d.origin);
  if (shifted.size() < 3) return BinaryMask(d.width, d.height);
  return fill_polygon(shifted, d.width, d.height);
}

double iou(const BinaryMask& a, const BinaryMask& b) {
  std::size_t inter = 0, uni = 0;
  const auto va = a.values();
  const auto vb = b.values();
  for (std::size_t i = 0; i < va.size(); ++i) {
    inter += va[i] && vb[i];
    uni += va[i] || vb[i];
  }
  return uni ? static_cast<double>(inter) / uni : 0.0;
}

bool overlaps(const BinaryMask& a, const BinaryMask& b) {
  const auto va = a.values();
  const auto vb = b.values();
  for (std::size_t i = 0; i < va.size(); ++i) {
    if (va[i] && vb[i]) return true;
  }
  return false;
}

}  // namespace

double loop_iou(const Loop& a, const Loop& b) {
  const Domain d = covering_domain({&a, &b});
  return iou(interior(a, d), interior(b, d));
}

RoomMatch room_pr(const std::vector<Loop>& pred, const std::vector<Loop>& gt, double iou_threshold) {
  std::vector<const Loop*> all;
  for (const Loop& l : pred) all.push_back(&l);
  for (const Loop& l : gt) all.push_back(&l);
  const Domain d = covering_domain(all);

  std::vector<BinaryMask> pm, gm;
  for (const Loop& l : pred) pm.push_back(interior(l, d));
  for (const Loop& l : gt) gm.push_back(interior(l, d));

  std::vector<bool> eligible(pred.size(), true);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    for (std::size_t j = i + 1; j < pred.size(); ++j) {
      if (overlaps(pm[i], pm[j])) eligible[i] = eligible[j] = false;
    }
  }

  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (!eligible[i]) continue;
    for (std::size_t g = 0; g < gt.size(); ++g) {
      const double v = iou(pm[i], gm[g]);
      if (v > iou_threshold) pairs.emplace_back(v, i, g);
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    return std::tie(std::get<1>(a), std::get<2>(a)) < std::tie(std::get<1>(b), std::get<2>(b));
  });

  RoomMatch m;
  m.pred_to_gt.assign(pred.size(), -1);
  std::vector<bool> gt_used(gt.size(), false);
  std::size_t matched = 0;
  for (const auto& [v, i, g] : pairs) {
    if (m.pred_to_gt[i] >= 0 || gt_used[g]) continue;
    m.pred_to_gt[i] = static_cast<int>(g);
    gt_used[g] = true;
    ++matched;
  }
  m.result = PRResult::from_counts(matched, pred.size(), gt.size());
  return m;
}

std::vector<std::vector<int>> room_neighbours(const FloorplanGraph& graph, const std::vector<Loop>& loops) {
  auto on_boundary = [](Vec2 p, const Loop& loop) {
    for (std::size_t i = 0; i < loop.size(); ++i) {
      if (point_segment_distance(p, Vec2(loop.corner(i)), Vec2(loop.corner(i + 1))) <= 1.0 + 1e-9) return true;
    }
    return false;
  };
  std::vector<std::set<int>> sets(loops.size());
  for (const auto& [i, j] : graph.edges) {
    const Vec2 a(graph.vertices.at(i));
    const Vec2 b(graph.vertices.at(j));
    const Vec2 mid = 0.5 * (a + b);
    std::vector<int> owners;
    for (std::size_t r = 0; r < loops.size(); ++r) {
      if (loops[r].size() >= 2 && on_boundary(a, loops[r]) && on_boundary(b, loops[r]) &&
          on_boundary(mid, loops[r]))
        owners.push_back(static_cast<int>(r));
    }
    for (const int r : owners) {
      for (const int s : owners) {
        if (r != s) sets[r].insert(s);
      }
    }
  }
  std::vector<std::vector<int>> out;
  for (const auto& s : sets) out.emplace_back(s.begin(), s.end());
  return out;
}

PRResult room_plus_plus_pr(const RoomMatch& rooms, const std::vector<std::vector<int>>& pred_neighbours,
                           const std::vector<std::vector<int>>& gt_neighbours, std::size_t total_gt) {
  std::size_t matched = 0;
  const std::size_t n = rooms.pred_to_gt.size();
  for (std::size_t p = 0; p < n; ++p) {
    const int g = rooms.pred_to_gt[p];
    if (g < 0) continue;
    std::set<int> mapped;
    for (const int q : pred_neighbours.at(p)) {
      if (rooms.pred_to_gt.at(q) >= 0) mapped.insert(rooms.pred_to_gt[q]);
    }
    const auto& expected = gt_neighbours.at(g);
    if (mapped == std::set<int>(expected.begin(), expected.end())) ++matched;
  }
  return PRResult::from_counts(matched, n, total_gt);
}

MetricsTable evaluate(const Floorplan& pred, const Floorplan& gt) {
  std::vector<Loop> pl, gl;
  for (const Room& r : pred.rooms) pl.push_back(r.loop);
  for (const Room& r : gt.rooms) gl.push_back(r.loop);

  MetricsTable t;
  const CornerMatch corners = corner_pr(pred.graph.vertices, gt.graph.vertices);
  t.corner = corners.result;
  t.edge = edge_pr(pred.graph, gt.graph, corners);
  const RoomMatch rooms = room_pr(pl, gl);
  t.room = rooms.result;
  t.room_plus_plus =
      room_plus_plus_pr(rooms, room_neighbours(pred.graph, pl), room_neighbours(gt.graph, gl), gl.size());
  return t;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string format_table(const MetricsTable& t) {
  std::string s = "metric   precision  recall  matched  pred  gt\n";
  auto row = [&](const char* name, const PRResult& r) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-8s %9s  %6s  %7zu  %4zu  %2zu\n", name, fmt(r.precision).c_str(),
                  fmt(r.recall).c_str(), r.matched, r.total_pred, r.total_gt);
    s += buf;
  };
  row("corner", t.corner);
  row("edge", t.edge);
  row("room", t.room);
  row("room++", t.room_plus_plus);
  return s;
}

std::string format_csv(const MetricsTable& t) {
  std::string s = "metric,precision,recall,matched,total_pred,total_gt\n";
  auto row = [&](const char* name, const PRResult& r) {
    s += std::string(name) + "," + fmt(r.precision) + "," + fmt(r.recall) + "," + std::to_string(r.matched) + "," +
         std::to_string(r.total_pred) + "," + std::to_string(r.total_gt) + "\n";
  };
  row("corner", t.corner);
  row("edge", t.edge);
  row("room", t.room);
  row("room++", t.room_plus_plus);
  return s;
}

}  // namespace floorsp
