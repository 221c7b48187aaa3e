#include "floorsp/room_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <tuple>

namespace floorsp {

namespace {

Vec2 mask_centroid(const BinaryMask& mask) {
  double sx = 0.0, sy = 0.0;
  std::size_t n = 0;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask(x, y)) continue;
      sx += x;
      sy += y;
      ++n;
    }
  }
  return n ? Vec2{sx / n, sy / n} : Vec2{};
}

// Direction from the midpoint of a-b toward the side facing `centroid`.
Vec2 inward_normal(Pixel a, Pixel b, Vec2 centroid) {
  const Vec2 dir = normalized(Vec2(b - a));
  Vec2 n{-dir.y, dir.x};
  const Vec2 mid = 0.5 * (Vec2(a) + Vec2(b));
  if (dot(n, centroid - mid) < 0.0) n = -1.0 * n;
  return n;
}

std::optional<StartLine> start_line_from(Pixel a, Pixel b, const BinaryMask& room, const BoundingBox& box,
                                         Vec2 centroid) {
  const Vec2 mid = 0.5 * (Vec2(a) + Vec2(b));
  const Vec2 n = inward_normal(a, b, centroid);
  constexpr double kStep = 0.25;

  bool entered = false;
  Vec2 inner;
  for (int k = 1;; ++k) {
    const Vec2 pt = mid + (k * kStep) * n;
    const Pixel px = round_to_pixel(pt);
    if (!box.contains(px)) break;
    if (room.value_or(px, 0)) {
      entered = true;
      inner = pt;
    } else if (entered) {
      break;
    }
  }
  if (!entered) return std::nullopt;

  // Leave the box, padded by half a pixel, in the outward direction.
  const Vec2 out = -1.0 * n;
  double t_exit = std::numeric_limits<double>::infinity();
  const double lo_x = box.min.x - 0.5, hi_x = box.max.x + 0.5;
  const double lo_y = box.min.y - 0.5, hi_y = box.max.y + 0.5;
  if (out.x > 1e-12) t_exit = std::min(t_exit, (hi_x - mid.x) / out.x);
  if (out.x < -1e-12) t_exit = std::min(t_exit, (lo_x - mid.x) / out.x);
  if (out.y > 1e-12) t_exit = std::min(t_exit, (hi_y - mid.y) / out.y);
  if (out.y < -1e-12) t_exit = std::min(t_exit, (lo_y - mid.y) / out.y);
  if (!std::isfinite(t_exit) || t_exit < 0.0) t_exit = 0.0;
  return StartLine{inner, mid + t_exit * out};
}

}  // namespace

std::vector<CornerCandidate> detect_corner_candidates(const Grid2D& corner, const BoundingBox& box,
                                                      int nms_radius, float threshold) {
  const int w = box.width();
  const int h = box.height();
  std::vector<std::uint8_t> peak(static_cast<std::size_t>(w) * h, 0);
  auto local = [&](Pixel p) { return static_cast<std::size_t>(p.y - box.min.y) * w + (p.x - box.min.x); };

  for (int y = box.min.y; y <= box.max.y; ++y) {
    for (int x = box.min.x; x <= box.max.x; ++x) {
      const float v = corner(x, y);
      if (v < threshold) continue;
      bool is_peak = true;
      for (int dy = -nms_radius; dy <= nms_radius && is_peak; ++dy) {
        for (int dx = -nms_radius; dx <= nms_radius; ++dx) {
          if (corner.contains(x + dx, y + dy) && corner(x + dx, y + dy) > v) {
            is_peak = false;
            break;
          }
        }
      }
      if (is_peak) peak[local({x, y})] = 1;
    }
  }

  // Collapse plateaus of equal peaks to the member nearest their centroid.
  std::vector<CornerCandidate> plateau_centres;
  std::vector<std::uint8_t> seen(peak.size(), 0);
  std::vector<Pixel> stack;
  for (int y = box.min.y; y <= box.max.y; ++y) {
    for (int x = box.min.x; x <= box.max.x; ++x) {
      if (!peak[local({x, y})] || seen[local({x, y})]) continue;
      std::vector<Pixel> comp;
      seen[local({x, y})] = 1;
      stack.push_back({x, y});
      while (!stack.empty()) {
        const Pixel p = stack.back();
        stack.pop_back();
        comp.push_back(p);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const Pixel q{p.x + dx, p.y + dy};
            if (!box.contains(q) || !peak[local(q)] || seen[local(q)]) continue;
            seen[local(q)] = 1;
            stack.push_back(q);
          }
        }
      }
      Vec2 c;
      for (const Pixel p : comp) c = c + Vec2(p);
      c = (1.0 / comp.size()) * c;
      std::sort(comp.begin(), comp.end());
      Pixel best = comp.front();
      double best_d = distance(Vec2(best), c);
      for (const Pixel p : comp) {
        const double d = distance(Vec2(p), c);
        if (d < best_d - 1e-12) {
          best = p;
          best_d = d;
        }
      }
      plateau_centres.push_back({best, corner[best]});
    }
  }

  std::sort(plateau_centres.begin(), plateau_centres.end(), [](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.position < b.position;
  });
  std::vector<CornerCandidate> out;
  for (const auto& c : plateau_centres) {
    const bool suppressed = std::any_of(out.begin(), out.end(), [&](const CornerCandidate& k) {
      return std::max(std::abs(k.position.x - c.position.x), std::abs(k.position.y - c.position.y)) <= nms_radius;
    });
    if (!suppressed) out.push_back(c);
  }
  return out;
}

std::optional<StartLine> make_start_line(Pixel a, Pixel b, const BinaryMask& room, const BoundingBox& box) {
  if (a == b) return std::nullopt;
  return start_line_from(a, b, room, box, mask_centroid(room));
}

std::optional<StartEdge> select_start_edge(std::span<const CornerCandidate> candidates, const Grid2D& edge_map,
                                           const BinaryMask& room, const DirectionAlphabet& alphabet,
                                           const BoundingBox& box) {
  if (candidates.size() < 2) return std::nullopt;
  const Vec2 centroid = mask_centroid(room);

  std::optional<StartEdge> best;
  double best_length = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      Pixel a = candidates[i].position;
      Pixel b = candidates[j].position;
      if (b < a) std::swap(a, b);
      if (a == b || !box.contains(a) || !box.contains(b)) continue;
      if (!alphabet.admits(angle_degrees(Vec2(b - a)))) continue;

      const auto trace = bresenham_line(a, b);
      if (std::any_of(trace.begin(), trace.end(), [&](Pixel p) { return room.value_or(p, 0) != 0; })) continue;
      const auto line = start_line_from(a, b, room, box, centroid);
      if (!line) continue;

      const Vec2 n = inward_normal(a, b, centroid);
      double likelihood = 0.0;
      std::size_t covered = 0;
      for (const Pixel p : trace) {
        likelihood += edge_map.value_or(p, 0.0f);
        for (double t = 0.5; t <= kCoverageDepth + 1e-9; t += 0.5) {
          if (room.value_or(round_to_pixel(Vec2(p) + t * n), 0)) {
            ++covered;
            break;
          }
        }
      }
      const double score = likelihood / trace.size() * (static_cast<double>(covered) / trace.size());
      const double length = distance(a, b);

      const bool better = !best || score > best->score ||
                          (score == best->score &&
                           (length > best_length ||
                            (length == best_length && std::tie(a, b) < std::tie(best->a, best->b))));
      if (better) {
        best = StartEdge{a, b, score};
        best_length = length;
      }
    }
  }
  return best;
}

EdgeCostModel::EdgeCostModel(const EnergyModel& energy, std::span<const Loop* const> other_loops)
    : width_(energy.maps().width()), height_(energy.maps().height()), complexity_(energy.weights().complexity) {
  const Weights& w = energy.weights();
  const std::size_t n = static_cast<std::size_t>(width_) * height_;
  std::vector<std::uint8_t> used_corner(n, 0), used_edge(n, 0);
  for (const Loop* loop : other_loops) {
    for (const Pixel p : loop->corners) {
      if (p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_) used_corner[index(p)] = 1;
    }
    for (const Pixel p : loop_edge_pixels(*loop)) {
      if (p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_) used_edge[index(p)] = 1;
    }
  }
  corner_cost_.resize(n);
  trace_cost_.resize(n);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      const Pixel p{x, y};
      const std::size_t i = index(p);
      corner_cost_[i] = 0.5 * w.corner * energy.corner_penalty(p) + 0.5 * w.corner_consistency * (1 - used_corner[i]);
      trace_cost_[i] = w.edge * energy.edge_penalty(p) + (energy.inside_any_segment(p) ? w.interior : 0.0) +
                       w.edge_consistency * (1 - used_edge[i]);
    }
  }
}

double EdgeCostModel::edge_weight(Pixel from, Pixel to) const {
  double trace = 0.0;
  for (const Pixel p : edge_trace(from, to)) trace += trace_cost(p);
  return corner_cost(from) + corner_cost(to) + trace + complexity_;
}

double EdgeCostModel::loop_weight(const Loop& loop) const {
  double s = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) s += edge_weight(loop.corner(i), loop.corner(i + 1));
  return s;
}

RoomGraph::RoomGraph(const BoundingBox& box, const DirectionAlphabet& alphabet, std::optional<StartLine> cut,
                     const EdgeCostModel& costs)
    : box_(box), cut_(cut), costs_(&costs) {
  const int reach = box.width() + box.height() + 2;
  // Axis rays first; a later ray drops offsets an earlier ray already reaches.
  std::vector<int> dirs = alphabet.directions;
  std::stable_partition(dirs.begin(), dirs.end(), [](int d) { return d % 90 == 0; });
  std::set<Pixel> claimed;
  for (const int deg : dirs) {
    Ray ray;
    ray.lattice = deg % 90 == 0;
    ray.step = ray_offset(deg, 1);
    for (int t = 1; t <= reach; ++t) {
      const Pixel off = ray_offset(deg, t);
      if (!ray.offsets.empty() && ray.offsets.back() == off) continue;
      if (std::abs(off.x) > box.width() || std::abs(off.y) > box.height()) break;
      if (!ray.lattice && claimed.count(off)) continue;
      claimed.insert(off);
      ray.offsets.push_back(off);
      if (!ray.lattice) ray.traces.push_back(edge_trace({0, 0}, off));
    }
    rays_.push_back(std::move(ray));
  }
}

bool RoomGraph::crosses_cut(Pixel from, Pixel to) const {
  return cut_ && segments_intersect(Vec2(from), Vec2(to), cut_->inner, cut_->outer);
}

std::size_t RoomGraph::edge_count() const {
  std::size_t n = 0;
  for (int y = box_.min.y; y <= box_.max.y; ++y) {
    for (int x = box_.min.x; x <= box_.max.x; ++x) for_each_edge({x, y}, [&](Pixel, double) { ++n; });
  }
  return n;
}

std::optional<PathResult> shortest_path(const RoomGraph& graph, Pixel source, Pixel target) {
  const BoundingBox& box = graph.box();
  if (!box.contains(source) || !box.contains(target)) return std::nullopt;
  const int w = box.width();
  const std::size_t n = box.area();
  auto to_index = [&](Pixel p) {
    return static_cast<std::uint32_t>((p.y - box.min.y) * w + (p.x - box.min.x));
  };
  auto to_pixel = [&](std::uint32_t i) { return Pixel{box.min.x + static_cast<int>(i % w), box.min.y + static_cast<int>(i / w)}; };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<std::int64_t> prev(n, -1);
  std::vector<std::uint8_t> done(n, 0);
  using Entry = std::pair<double, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;

  const std::uint32_t s = to_index(source);
  const std::uint32_t t = to_index(target);
  dist[s] = 0.0;
  queue.emplace(0.0, s);
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (done[u]) continue;
    done[u] = 1;
    if (u == t) break;
    graph.for_each_edge(to_pixel(u), [&](Pixel to, double weight) {
      const std::uint32_t v = to_index(to);
      if (done[v]) return;
      const double nd = d + weight;
      if (nd < dist[v]) {
        dist[v] = nd;
        prev[v] = u;
        queue.emplace(nd, v);
      }
    });
  }
  if (!done[t]) return std::nullopt;

  PathResult result;
  result.weight = dist[t];
  for (std::int64_t v = t; v >= 0; v = prev[static_cast<std::size_t>(v)]) {
    result.nodes.push_back(to_pixel(static_cast<std::uint32_t>(v)));
    if (static_cast<std::uint32_t>(v) == s) break;
  }
  std::reverse(result.nodes.begin(), result.nodes.end());
  return result;
}

std::vector<Pixel> fuse_straight_nodes(const std::vector<Pixel>& nodes) {
  if (nodes.size() < 3) return nodes;
  std::vector<Pixel> out{nodes.front()};
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    const Pixel in = nodes[i] - out.back();
    const Pixel next = nodes[i + 1] - nodes[i];
    const long long c = static_cast<long long>(in.x) * next.y - static_cast<long long>(in.y) * next.x;
    const long long d = static_cast<long long>(in.x) * next.x + static_cast<long long>(in.y) * next.y;
    if (c == 0 && d > 0) continue;
    out.push_back(nodes[i]);
  }
  out.push_back(nodes.back());
  return out;
}

std::string_view to_string(Fallback f) {
  switch (f) {
    case Fallback::kNone: return "none";
    case Fallback::kSmallSegment: return "small_segment";
    case Fallback::kNoStartEdge: return "no_start_edge";
    case Fallback::kNoPath: return "no_path";
  }
  return "unknown";
}

BoundingBox room_search_box(const BinaryMask& segment, const SolverOptions& options) {
  return bounding_box(dilate(segment, options.dilation_iterations, Connectivity::kEight), options.box_margin);
}

Loop fallback_loop(const BinaryMask& segment, int margin) {
  const BoundingBox b = bounding_box(segment, margin);
  Pixel lo = b.min, hi = b.max;
  if (hi.x == lo.x) hi.x = std::min(segment.width() - 1, hi.x + 1), lo.x = hi.x - 1;
  if (hi.y == lo.y) hi.y = std::min(segment.height() - 1, hi.y + 1), lo.y = hi.y - 1;
  return Loop{{lo, {hi.x, lo.y}, hi, {lo.x, hi.y}}};
}

std::optional<RoomSolution> solve_with_start_edge(const RoomGraph& graph, const EdgeCostModel& costs,
                                                  const StartEdge& edge) {
  auto path = shortest_path(graph, edge.a, edge.b);
  if (!path) return std::nullopt;
  Loop loop{fuse_straight_nodes(path->nodes)};
  if (!is_valid_loop(loop)) return std::nullopt;

  RoomSolution s;
  s.loop = std::move(loop);
  s.start_edge = edge;
  s.path_weight = path->weight;
  s.start_edge_weight = costs.edge_weight(edge.b, edge.a);
  s.box = graph.box();
  return s;
}

RoomSolution solve_room(const RoomProblem& problem) {
  const EnergyModel& energy = *problem.energy;
  const LikelihoodBundle& maps = energy.maps();
  const BinaryMask& segment = maps.segments.at(static_cast<std::size_t>(problem.room));
  const SolverOptions& opt = problem.options;

  RoomSolution fallback;
  fallback.box = room_search_box(segment, opt);
  fallback.loop = fallback_loop(segment, opt.fallback_margin);
  if (count_set(segment) < opt.min_segment_pixels) {
    fallback.fallback = Fallback::kSmallSegment;
    fallback.alphabet = DirectionAlphabet::from_frames({problem.global_frames[0].theta}, opt.direction_tolerance);
    return fallback;
  }

  std::vector<SolvedLoop> neighbours;
  std::vector<const Loop*> others;
  for (std::size_t r = 0; r < problem.loops.size(); ++r) {
    if (static_cast<int>(r) == problem.room || !problem.loops[r]) continue;
    others.push_back(&*problem.loops[r]);
    neighbours.push_back({&*problem.loops[r], r < problem.frames.size() ? problem.frames[r] : std::vector<int>{}});
  }

  const BoundingBox box = fallback.box;
  const DirectionAlphabet alphabet =
      assign_room_frames(problem.global_frames, *problem.directions, box, neighbours, opt.direction_tolerance);
  fallback.alphabet = alphabet;

  const auto candidates = detect_corner_candidates(maps.corner, box, opt.nms_radius, opt.nms_threshold);
  const auto edge = select_start_edge(candidates, maps.edge, segment, alphabet, box);
  if (!edge) {
    fallback.fallback = Fallback::kNoStartEdge;
    return fallback;
  }

  const EdgeCostModel costs(energy, others);
  const RoomGraph graph(box, alphabet, make_start_line(edge->a, edge->b, segment, box), costs);
  auto solution = solve_with_start_edge(graph, costs, *edge);
  if (!solution) {
    fallback.fallback = Fallback::kNoPath;
    fallback.start_edge = edge;
    return fallback;
  }
  solution->alphabet = alphabet;
  return std::move(*solution);
}

}  // namespace floorsp
