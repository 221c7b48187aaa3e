#include "floorsp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>

#include "floorsp/errors.hpp"

namespace floorsp {

BinaryMask segments_union(const LikelihoodBundle& maps) {
  BinaryMask out(maps.width(), maps.height(), 0);
  for (const auto& s : maps.segments) out = mask_union(out, s);
  return out;
}

namespace {

struct Cell {
  int x0, y0, x1, y1;
  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
};

constexpr int kMinCornerSeparation = 8;
constexpr int kRotatedInset = 10;
constexpr int kMaxAttempts = 500;

std::vector<Pixel> cell_corners(const Cell& c) {
  return {{c.x0, c.y0}, {c.x1, c.y0}, {c.x1, c.y1}, {c.x0, c.y1}};
}

bool split_cells(std::vector<Cell>& cells, int target, int min_side, std::mt19937_64& rng) {
  while (static_cast<int>(cells.size()) < target) {
    std::vector<double> weights(cells.size(), 0.0);
    bool any = false;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const auto& c = cells[i];
      if (c.width() >= 2 * min_side || c.height() >= 2 * min_side) {
        weights[i] = static_cast<double>(c.width()) * c.height();
        any = true;
      }
    }
    if (!any) return false;
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    const std::size_t i = pick(rng);
    const Cell c = cells[i];

    const bool can_v = c.width() >= 2 * min_side;
    const bool can_h = c.height() >= 2 * min_side;
    bool vertical;
    if (can_v && can_h) {
      if (c.width() * 4 > c.height() * 5) {
        vertical = true;
      } else if (c.height() * 4 > c.width() * 5) {
        vertical = false;
      } else {
        vertical = std::bernoulli_distribution(0.5)(rng);
      }
    } else {
      vertical = can_v;
    }

    if (vertical) {
      const int pos = std::uniform_int_distribution<int>(c.x0 + min_side, c.x1 - min_side)(rng);
      cells[i] = {c.x0, c.y0, pos, c.y1};
      cells.push_back({pos, c.y0, c.x1, c.y1});
    } else {
      const int pos = std::uniform_int_distribution<int>(c.y0 + min_side, c.y1 - min_side)(rng);
      cells[i] = {c.x0, c.y0, c.x1, pos};
      cells.push_back({c.x0, pos, c.x1, c.y1});
    }
  }
  return true;
}

// Distinct corners must be well separated, and parallel walls that overlap
// along their length must not be nearly coincident.
bool cells_well_separated(const std::vector<Cell>& cells) {
  std::vector<Pixel> corners;
  for (const auto& c : cells) {
    for (const Pixel p : cell_corners(c)) corners.push_back(p);
  }
  std::sort(corners.begin(), corners.end());
  corners.erase(std::unique(corners.begin(), corners.end()), corners.end());
  for (std::size_t i = 0; i < corners.size(); ++i) {
    for (std::size_t j = i + 1; j < corners.size(); ++j) {
      const int d = std::max(std::abs(corners[i].x - corners[j].x), std::abs(corners[i].y - corners[j].y));
      if (d < kMinCornerSeparation) return false;
    }
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (i == j) continue;
      const Cell& a = cells[i];
      const Cell& b = cells[j];
      for (const int ax : {a.x0, a.x1}) {
        for (const int bx : {b.x0, b.x1}) {
          const int overlap = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
          if (ax != bx && std::abs(ax - bx) < kMinCornerSeparation && overlap > 0) return false;
        }
      }
      for (const int ay : {a.y0, a.y1}) {
        for (const int by : {b.y0, b.y1}) {
          const int overlap = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
          if (ay != by && std::abs(ay - by) < kMinCornerSeparation && overlap > 0) return false;
        }
      }
    }
  }
  return true;
}

std::optional<Loop> rotated_room(const Cell& c, int theta, double ratio) {
  const Vec2 d = unit_vector(theta);
  const Vec2 dp = unit_vector(theta + 90);
  const double avail_w = c.width() - 2.0 * kRotatedInset;
  const double avail_h = c.height() - 2.0 * kRotatedInset;
  const double bw = avail_w / (ratio * std::abs(d.x) + std::abs(dp.x));
  const double bh = avail_h / (ratio * std::abs(d.y) + std::abs(dp.y));
  const int b = static_cast<int>(std::floor(std::min(bw, bh)));
  const int a = static_cast<int>(std::floor(ratio * b));
  if (a < 20 || b < 20) return std::nullopt;

  const Vec2 centre{0.5 * (c.x0 + c.x1), 0.5 * (c.y0 + c.y1)};
  const Vec2 half = 0.5 * (Vec2{a * d.x, a * d.y} + Vec2{b * dp.x, b * dp.y});
  const Pixel c0 = round_to_pixel(centre - half);
  const Pixel c1 = c0 + ray_offset(theta, a);
  const Pixel c2 = c1 + ray_offset(theta + 90, b);
  const Pixel c3 = c0 + ray_offset(theta + 90, b);
  Loop loop{{c0, c1, c2, c3}};
  for (const Pixel p : loop.corners) {
    if (p.x < c.x0 + kMinCornerSeparation || p.x > c.x1 - kMinCornerSeparation ||
        p.y < c.y0 + kMinCornerSeparation || p.y > c.y1 - kMinCornerSeparation) {
      return std::nullopt;
    }
  }
  return loop;
}

}  // namespace

GroundTruthPlan synth_plan(const SynthOptions& options) {
  if (options.rooms < 1 || options.rooms > 16) throw std::invalid_argument("rooms must be in [1, 16]");
  if (options.grid < 64) throw std::invalid_argument("grid must be at least 64");
  if (options.non_manhattan_fraction < 0.0 || options.non_manhattan_fraction > 1.0) {
    throw std::invalid_argument("non_manhattan_fraction must be in [0, 1]");
  }

  const int g = options.grid;
  const int margin = std::max(8, g / 10);
  const int min_side = std::max(16, g / 8);
  const int rotated_min_side = std::max(40, g * 7 / 32);
  const int rotated_count =
      std::clamp(static_cast<int>(std::floor(options.rooms * options.non_manhattan_fraction + 1e-9)), 0, options.rooms);

  std::mt19937_64 rng(options.seed);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<Cell> cells{{margin, margin, g - 1 - margin, g - 1 - margin}};
    if (!split_cells(cells, options.rooms, min_side, rng)) continue;
    if (!cells_well_separated(cells)) continue;

    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (std::min(cells[i].width(), cells[i].height()) >= rotated_min_side) eligible.push_back(i);
    }
    if (static_cast<int>(eligible.size()) < rotated_count) continue;
    std::shuffle(eligible.begin(), eligible.end(), rng);
    eligible.resize(static_cast<std::size_t>(rotated_count));

    GroundTruthPlan plan;
    plan.width = g;
    plan.height = g;
    bool ok = true;
    for (std::size_t i = 0; i < cells.size() && ok; ++i) {
      Room room{static_cast<int>(i), Loop{cell_corners(cells[i])}};
      int frame = 0;
      if (std::find(eligible.begin(), eligible.end(), i) != eligible.end()) {
        const int theta = 10 * std::uniform_int_distribution<int>(1, 8)(rng);
        const double ratio = std::uniform_real_distribution<double>(0.75, 1.33)(rng);
        auto loop = rotated_room(cells[i], theta, ratio);
        if (!loop) {
          ok = false;
          break;
        }
        room.loop = std::move(*loop);
        frame = theta;
      }
      plan.rooms.push_back(std::move(room));
      plan.frames.push_back(frame);
    }
    if (ok) return plan;
  }
  throw GenerationFailed("could not generate a plan with " + std::to_string(options.rooms) + " rooms");
}

void paint_corner(Grid2D& grid, Pixel p, float value) {
  for (int dy = -kCornerRadius; dy <= kCornerRadius; ++dy) {
    for (int dx = -kCornerRadius; dx <= kCornerRadius; ++dx) {
      const Pixel q{p.x + dx, p.y + dy};
      if (grid.contains(q)) grid[q] = std::max(grid[q], value);
    }
  }
}

namespace {

template <typename F>
void for_each_stroke_pixel(int width, int height, Pixel a, Pixel b, F&& f) {
  const int r = static_cast<int>(std::ceil(kStrokeHalfWidth));
  const int x0 = std::max(0, std::min(a.x, b.x) - r);
  const int x1 = std::min(width - 1, std::max(a.x, b.x) + r);
  const int y0 = std::max(0, std::min(a.y, b.y) - r);
  const int y1 = std::min(height - 1, std::max(a.y, b.y) + r);
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      if (point_segment_distance(Vec2(x, y), Vec2(a), Vec2(b)) <= kStrokeHalfWidth + 1e-9) f(Pixel{x, y});
    }
  }
}

}  // namespace

Grid2D render_corner_map(const GroundTruthPlan& plan) {
  Grid2D grid(plan.width, plan.height, 0.0f);
  for (const auto& room : plan.rooms) {
    for (const Pixel p : room.loop.corners) paint_corner(grid, p);
  }
  return grid;
}

Grid2D render_edge_map(const GroundTruthPlan& plan) {
  Grid2D grid(plan.width, plan.height, 0.0f);
  for (const auto& room : plan.rooms) {
    const auto& loop = room.loop;
    for (std::size_t i = 0; i < loop.size(); ++i) {
      for_each_stroke_pixel(plan.width, plan.height, loop.corner(i), loop.corner(i + 1),
                            [&](Pixel p) { grid[p] = 1.0f; });
    }
  }
  return grid;
}

int direction_bin(Vec2 edge) {
  const double a = angle_degrees(edge);
  return static_cast<int>(std::lround(a / kDirectionBinDegrees)) % kDirectionBins;
}

std::vector<Grid2D> render_direction_map(const GroundTruthPlan& plan) {
  std::vector<Grid2D> bins(kDirectionBins, Grid2D(plan.width, plan.height, 0.0f));
  for (const auto& room : plan.rooms) {
    const auto& loop = room.loop;
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const Pixel a = loop.corner(i);
      const Pixel b = loop.corner(i + 1);
      const int bin = direction_bin(Vec2(b - a));
      const int opposite = (bin + kDirectionBins / 2) % kDirectionBins;
      for_each_stroke_pixel(plan.width, plan.height, a, b, [&](Pixel p) {
        bins[bin][p] = 1.0f;
        bins[opposite][p] = 1.0f;
      });
    }
  }
  return bins;
}

std::vector<BinaryMask> render_room_segments(const GroundTruthPlan& plan, int erosion_iterations) {
  std::vector<BinaryMask> out;
  out.reserve(plan.rooms.size());
  for (const auto& room : plan.rooms) {
    out.push_back(erode(fill_polygon(room.loop.corners, plan.width, plan.height), erosion_iterations,
                        Connectivity::kEight));
  }
  return out;
}

LikelihoodBundle render_bundle(const GroundTruthPlan& plan, int erosion_iterations) {
  return {render_corner_map(plan), render_edge_map(plan), render_direction_map(plan),
          render_room_segments(plan, erosion_iterations)};
}

namespace {

// 8-connected components of pixels >= 0.5, in raster scan order.
std::vector<std::vector<std::size_t>> corner_components(const Grid2D& grid) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::uint8_t> seen(grid.size(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < grid.size(); ++start) {
    if (seen[start] || grid.values()[start] < 0.5f) continue;
    std::vector<std::size_t> comp;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      comp.push_back(i);
      const Pixel p = grid.pixel(i);
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const Pixel q{p.x + dx, p.y + dy};
          if (!grid.contains(q)) continue;
          const std::size_t j = grid.index(q);
          if (seen[j] || grid.values()[j] < 0.5f) continue;
          seen[j] = 1;
          stack.push_back(j);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

void jitter(Grid2D& grid, double sigma, std::mt19937_64& rng) {
  std::normal_distribution<double> noise(0.0, sigma);
  for (float& v : grid.values()) v = static_cast<float>(std::clamp(v + noise(rng), 0.0, 1.0));
}

}  // namespace

LikelihoodBundle perturb(const LikelihoodBundle& bundle, const NoiseSpec& noise, std::uint64_t seed,
                         PerturbReport* report) {
  LikelihoodBundle out = bundle;
  PerturbReport local;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  if (noise.corner_drop > 0.0) {
    for (const auto& comp : corner_components(out.corner)) {
      if (unit(rng) < noise.corner_drop) {
        for (const std::size_t i : comp) out.corner.values()[i] = 0.0f;
        ++local.dropped_corners;
      }
    }
  }

  if (noise.corner_spurious > 0.0) {
    const int area = out.width() * out.height();
    const int count = std::binomial_distribution<int>(area, noise.corner_spurious)(rng);
    std::uniform_int_distribution<int> col(0, out.width() - 1);
    std::uniform_int_distribution<int> row(0, out.height() - 1);
    for (int k = 0; k < count; ++k) {
      const int x = col(rng);
      const int y = row(rng);
      paint_corner(out.corner, {x, y});
    }
    local.spurious_corners = count;
  }

  if (noise.jitter_sigma > 0.0) {
    jitter(out.corner, noise.jitter_sigma, rng);
    jitter(out.edge, noise.jitter_sigma, rng);
    for (auto& bin : out.direction) jitter(bin, noise.jitter_sigma, rng);
  }

  if (noise.mask_flip > 0.0) {
    for (std::size_t s = 0; s < out.segments.size(); ++s) {
      const BinaryMask& src = bundle.segments[s];
      BinaryMask& dst = out.segments[s];
      for (int y = 0; y < src.height(); ++y) {
        for (int x = 0; x < src.width(); ++x) {
          const bool v = src(x, y) != 0;
          bool boundary = false;
          for (const Pixel d : {Pixel{1, 0}, Pixel{-1, 0}, Pixel{0, 1}, Pixel{0, -1}}) {
            const Pixel q{x + d.x, y + d.y};
            if ((src.value_or(q, 0) != 0) != v) boundary = true;
          }
          if (boundary && unit(rng) < noise.mask_flip) {
            dst(x, y) = v ? 0 : 1;
            ++local.flipped_mask_pixels;
          }
        }
      }
    }
  }

  if (report) *report = local;
  return out;
}

}  // namespace floorsp
