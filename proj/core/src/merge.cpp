#include "floorsp/merge.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace floorsp {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

struct Segment {
  EdgeRef ref;
  Vec2 a, b;
  Vec2 dir;
  double length = 0.0;
};

std::vector<Segment> loop_segments(std::span<const Loop> loops) {
  std::vector<Segment> out;
  for (std::size_t r = 0; r < loops.size(); ++r) {
    const Loop& loop = loops[r];
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const Vec2 a(loop.corner(i));
      const Vec2 b(loop.corner(i + 1));
      const double len = distance(a, b);
      if (len == 0.0) continue;
      out.push_back({{static_cast<int>(r), static_cast<int>(i)}, a, b, (1.0 / len) * (b - a), len});
    }
  }
  return out;
}

double line_distance(Vec2 p, Vec2 origin, Vec2 dir) { return std::abs(cross(dir, p - origin)); }

double direction_angle(Vec2 d) { return angle_degrees(d); }

bool colinear_contiguous(const Segment& s, const Segment& t, const MergeOptions& o) {
  if (line_angle_difference(direction_angle(s.dir), direction_angle(t.dir)) >= o.angle_tolerance) return false;
  const double offset = std::max({line_distance(t.a, s.a, s.dir), line_distance(t.b, s.a, s.dir),
                                  line_distance(s.a, t.a, t.dir), line_distance(s.b, t.a, t.dir)});
  if (offset >= o.offset_tolerance) return false;
  const double s1 = s.length;
  const double t0 = dot(t.a - s.a, s.dir);
  const double t1 = dot(t.b - s.a, s.dir);
  const double gap = std::max(0.0, std::max(std::min(t0, t1), 0.0) - std::min(std::max(t0, t1), s1));
  return gap <= o.gap_tolerance + 1e-9;
}

// Extent of a group's member endpoints along `dir`, measured from `origin`.
std::pair<double, double> extent(const SegmentGroup& g, std::span<const Loop> loops, Vec2 origin, Vec2 dir) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const EdgeRef& m : g.members) {
    const Loop& loop = loops[m.room];
    for (const Pixel p : {loop.corner(m.edge), loop.corner(m.edge + 1)}) {
      const double s = dot(Vec2(p) - origin, dir);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
  }
  return {lo, hi};
}

std::set<int> group_rooms(const SegmentGroup& g) {
  std::set<int> rooms;
  for (const EdgeRef& m : g.members) rooms.insert(m.room);
  return rooms;
}

void drop_repeated_corners(Loop& loop) {
  std::vector<Pixel> out;
  for (const Pixel p : loop.corners) {
    if (out.empty() || out.back() != p) out.push_back(p);
  }
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  loop.corners = std::move(out);
}

// Orthogonal least-squares line through the corners of both groups, each
// group weighing half. For two parallel walls this is their midline.
std::pair<Vec2, Vec2> midline(const std::vector<Loop>& loops, const std::set<std::pair<int, int>>& g_corners,
                              const std::set<std::pair<int, int>>& h_corners) {
  Vec2 centre;
  for (const auto* set : {&g_corners, &h_corners}) {
    Vec2 sum;
    for (const auto& [room, idx] : *set) sum = sum + Vec2(loops[room].corners[idx]);
    centre = centre + (0.5 / static_cast<double>(set->size())) * sum;
  }
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const auto* set : {&g_corners, &h_corners}) {
    const double w = 0.5 / static_cast<double>(set->size());
    for (const auto& [room, idx] : *set) {
      const Vec2 d = Vec2(loops[room].corners[idx]) - centre;
      sxx += w * d.x * d.x;
      syy += w * d.y * d.y;
      sxy += w * d.x * d.y;
    }
  }
  const double theta = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  Vec2 dir{std::cos(theta), std::sin(theta)};
  if (std::abs(dir.x) < 1e-12) dir = {0.0, 1.0};
  if (std::abs(dir.y) < 1e-12) dir = {1.0, 0.0};
  return {centre, dir};
}

std::set<std::pair<int, int>> group_corners(const std::vector<Loop>& loops, const SegmentGroup& g) {
  std::set<std::pair<int, int>> out;
  for (const EdgeRef& m : g.members) {
    const int n = static_cast<int>(loops[m.room].size());
    out.insert({m.room, m.edge});
    out.insert({m.room, (m.edge + 1) % n});
  }
  return out;
}

// Snaps g and h onto their midline. Returns false when nothing moved, a
// loop would degenerate, or a corner would move further than `reach`.
bool snap_pair(std::vector<Loop>& loops, const SegmentGroup& g, const SegmentGroup& h, double reach) {
  const auto g_corners = group_corners(loops, g);
  const auto h_corners = group_corners(loops, h);
  const auto [mid, dir] = midline(loops, g_corners, h_corners);

  std::set<std::pair<int, int>> corners = g_corners;
  corners.insert(h_corners.begin(), h_corners.end());
  std::vector<Loop> next = loops;
  bool changed = false;
  for (const auto& [room, idx] : corners) {
    Pixel& c = next[room].corners[idx];
    const Pixel moved = round_to_pixel(mid + dot(Vec2(c) - mid, dir) * dir);
    if (distance(Vec2(moved), Vec2(c)) > reach + 1e-9) return false;
    changed |= moved != c;
    c = moved;
  }
  if (!changed) return false;
  for (Loop& loop : next) {
    drop_repeated_corners(loop);
    if (loop.size() < 3) return false;
  }
  loops = std::move(next);
  return true;
}

double snap_reach(const MergeOptions& options) { return 0.5 * options.snap_distance + 0.5 * std::sqrt(2.0); }

void snap_in_place(std::vector<Loop>& loops, const MergeOptions& options);
void merge_corners_in_place(std::vector<Loop>& loops, const MergeOptions& options);

}  // namespace

std::vector<SegmentGroup> find_segment_groups(std::span<const Loop> loops, const MergeOptions& options) {
  const std::vector<Segment> segs = loop_segments(loops);
  DisjointSets sets(segs.size());
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      if (colinear_contiguous(segs[i], segs[j], options)) sets.unite(i, j);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < segs.size(); ++i) members[sets.find(i)].push_back(i);

  std::vector<SegmentGroup> groups;
  for (const auto& [root, idx] : members) {
    SegmentGroup g;
    // Undirected average direction via doubled angles.
    double cx = 0.0, cy = 0.0, px = 0.0, py = 0.0;
    for (const std::size_t i : idx) {
      const Segment& s = segs[i];
      g.members.push_back(s.ref);
      g.length += s.length;
      cx += s.length * (s.dir.x * s.dir.x - s.dir.y * s.dir.y);
      cy += s.length * (2.0 * s.dir.x * s.dir.y);
      const Vec2 m = 0.5 * (s.a + s.b);
      px += s.length * m.x;
      py += s.length * m.y;
    }
    const double half = 0.5 * std::atan2(cy, cx);
    g.direction = {std::cos(half), std::sin(half)};
    // Exact axis directions keep snapping of lattice walls exact.
    if (std::abs(g.direction.x) < 1e-12) g.direction = {0.0, 1.0};
    if (std::abs(g.direction.y) < 1e-12) g.direction = {1.0, 0.0};
    g.point = {px / g.length, py / g.length};
    std::sort(g.members.begin(), g.members.end());
    groups.push_back(std::move(g));
  }
  return groups;
}

namespace {

void snap_in_place(std::vector<Loop>& loops, const MergeOptions& options) {
  std::size_t total_edges = 0;
  for (const Loop& l : loops) total_edges += l.size();
  const std::size_t guard = 4 * total_edges + 16;

  for (std::size_t pass = 0; pass < guard; ++pass) {
    const auto groups = find_segment_groups(loops, options);
    struct Candidate {
      double length;
      std::size_t g, h;
    };
    std::vector<Candidate> candidates;
    std::vector<std::set<int>> rooms;
    for (const auto& g : groups) rooms.push_back(group_rooms(g));

    for (std::size_t i = 0; i < groups.size(); ++i) {
      for (std::size_t j = i + 1; j < groups.size(); ++j) {
        const SegmentGroup& g = groups[i];
        const SegmentGroup& h = groups[j];
        if (line_angle_difference(direction_angle(g.direction), direction_angle(h.direction)) >=
            options.angle_tolerance)
          continue;
        const bool shared_room = std::any_of(rooms[i].begin(), rooms[i].end(),
                                             [&](int r) { return rooms[j].count(r) > 0; });
        if (shared_room) continue;
        const auto [g0, g1] = extent(g, loops, g.point, g.direction);
        const auto [h0, h1] = extent(h, loops, g.point, g.direction);
        const double lo = std::max(g0, h0);
        const double hi = std::min(g1, h1);
        if (hi - lo <= 1e-9) continue;
        Vec2 dh = h.direction;
        const double offset = std::max(line_distance(g.point + lo * g.direction, h.point, dh),
                                       line_distance(g.point + hi * g.direction, h.point, dh));
        if (offset <= 1e-9 || offset > options.snap_distance + 1e-9) continue;
        candidates.push_back({g.length + h.length, i, j});
      }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.length > b.length; });
    bool changed = false;
    for (const Candidate& c : candidates) {
      if (snap_pair(loops, groups[c.g], groups[c.h], snap_reach(options))) {
        changed = true;
        break;
      }
    }
    if (!changed) break;
  }
}

}  // namespace

std::vector<Loop> snap_parallel_groups(std::vector<Loop> loops, const MergeOptions& options) {
  snap_in_place(loops, options);
  return loops;
}

FloorplanGraph build_graph(std::span<const Loop> loops) {
  FloorplanGraph graph;
  for (const Loop& l : loops) graph.vertices.insert(graph.vertices.end(), l.corners.begin(), l.corners.end());
  std::sort(graph.vertices.begin(), graph.vertices.end());
  graph.vertices.erase(std::unique(graph.vertices.begin(), graph.vertices.end()), graph.vertices.end());
  auto vertex_of = [&](Pixel p) {
    return static_cast<int>(std::lower_bound(graph.vertices.begin(), graph.vertices.end(), p) -
                            graph.vertices.begin());
  };

  std::map<std::pair<int, int>, std::set<int>> edges;
  for (std::size_t r = 0; r < loops.size(); ++r) {
    const Loop& loop = loops[r];
    std::vector<int> cycle;
    for (const Pixel p : loop.corners) cycle.push_back(vertex_of(p));
    std::vector<int> face;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const int u = cycle[i];
      const int v = cycle[(i + 1) % cycle.size()];
      if (u == v) continue;
      if (face.empty() || face.back() != u) face.push_back(u);
      const Vec2 a(graph.vertices[u]);
      const Vec2 b(graph.vertices[v]);
      const Vec2 ab = b - a;
      const double len2 = dot(ab, ab);
      // Split at vertices lying on the edge.
      std::vector<std::pair<double, int>> stops{{0.0, u}, {1.0, v}};
      for (std::size_t w = 0; w < graph.vertices.size(); ++w) {
        if (static_cast<int>(w) == u || static_cast<int>(w) == v) continue;
        const Vec2 p(graph.vertices[w]);
        const double t = dot(p - a, ab) / len2;
        if (t <= 0.0 || t >= 1.0) continue;
        if (point_segment_distance(p, a, b) <= 1.0 + 1e-9) stops.push_back({t, static_cast<int>(w)});
      }
      std::sort(stops.begin(), stops.end());
      for (std::size_t k = 0; k + 1 < stops.size(); ++k) {
        const int x = stops[k].second;
        const int y = stops[k + 1].second;
        if (x == y) continue;
        edges[{std::min(x, y), std::max(x, y)}].insert(static_cast<int>(r));
        if (k + 2 < stops.size()) face.push_back(y);
      }
    }
    if (face.size() > 1 && face.front() == face.back()) face.pop_back();
    graph.rooms.push_back(std::move(face));
  }
  for (const auto& [e, rooms] : edges) {
    graph.edges.push_back(e);
    graph.edge_rooms.emplace_back(rooms.begin(), rooms.end());
  }
  return graph;
}

namespace {

void merge_corners_in_place(std::vector<Loop>& loops, const MergeOptions& options) {
  // Current position of every corner; clustering repeats on the positions.
  std::vector<Pixel> position;
  for (const Loop& l : loops) position.insert(position.end(), l.corners.begin(), l.corners.end());

  for (int pass = 0; pass < 16; ++pass) {
    std::vector<Pixel> distinct = position;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    DisjointSets sets(distinct.size());
    bool any = false;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      for (std::size_t j = i + 1; j < distinct.size(); ++j) {
        if (distance(distinct[i], distinct[j]) <= options.corner_distance + 1e-9) any |= sets.unite(i, j);
      }
    }
    if (!any) break;

    // Centroid weighted by how many corners sit at each position.
    std::map<Pixel, std::size_t> multiplicity;
    for (const Pixel p : position) ++multiplicity[p];
    std::map<std::size_t, std::pair<Vec2, std::size_t>> sums;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      auto& [sum, count] = sums[sets.find(i)];
      const std::size_t m = multiplicity[distinct[i]];
      sum = sum + static_cast<double>(m) * Vec2(distinct[i]);
      count += m;
    }
    std::map<Pixel, Pixel> moved;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      const auto& [sum, count] = sums[sets.find(i)];
      moved[distinct[i]] = round_to_pixel((1.0 / count) * sum);
    }
    for (Pixel& p : position) p = moved[p];
  }

  std::size_t k = 0;
  for (Loop& l : loops) {
    for (Pixel& c : l.corners) c = position[k++];
    drop_repeated_corners(l);
  }
}

}  // namespace

MergeResult merge_corners(std::span<const Loop> loops, const MergeOptions& options) {
  MergeResult result;
  result.loops.assign(loops.begin(), loops.end());
  merge_corners_in_place(result.loops, options);
  result.graph = build_graph(result.loops);
  return result;
}

MergeResult merge(std::span<const Loop> loops, const MergeOptions& options) {
  MergeResult result;
  result.loops.assign(loops.begin(), loops.end());
  for (int pass = 0; pass < std::max(1, options.max_passes); ++pass) {
    const std::vector<Loop> before = result.loops;
    snap_in_place(result.loops, options);
    merge_corners_in_place(result.loops, options);
    if (result.loops == before) break;
  }
  result.graph = build_graph(result.loops);
  return result;
}

std::vector<std::pair<int, int>> room_adjacency(const FloorplanGraph& graph) {
  std::set<std::pair<int, int>> pairs;
  for (const auto& rooms : graph.edge_rooms) {
    for (std::size_t i = 0; i < rooms.size(); ++i) {
      for (std::size_t j = i + 1; j < rooms.size(); ++j) pairs.insert({rooms[i], rooms[j]});
    }
  }
  return {pairs.begin(), pairs.end()};
}

}  // namespace floorsp
