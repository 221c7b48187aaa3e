#include "fixtures.hpp"

#include <algorithm>
#include <random>

namespace floorsp::testing {

Loop rect_loop(int x0, int y0, int x1, int y1) { return Loop{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}}; }

GroundTruthPlan plan_from_loops(const std::vector<Loop>& loops, int grid, std::vector<int> frames) {
  GroundTruthPlan plan;
  plan.width = plan.height = grid;
  for (std::size_t i = 0; i < loops.size(); ++i) plan.rooms.push_back({static_cast<int>(i), loops[i]});
  frames.resize(loops.size(), 0);
  plan.frames = std::move(frames);
  return plan;
}

TwoRoomFixture two_room_fixture(int index, int grid) {
  std::mt19937 rng(static_cast<unsigned>(1000 + index));
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  const int margin = grid / 8;
  const int span = grid - 2 * margin;
  // Split position along the main axis and extents across it.
  const int split = margin + uniform(32, span - 32);
  const int a_lo = margin + uniform(0, 2) * 12;
  const int a_hi = grid - 1 - margin - uniform(0, 2) * 12;
  const int b_lo = margin + uniform(0, 2) * 12;
  const int b_hi = grid - 1 - margin - uniform(0, 2) * 12;
  const int lo0 = margin, hi0 = grid - 1 - margin;

  TwoRoomFixture f;
  std::vector<Loop> loops;
  if (index % 2 == 0) {
    loops = {rect_loop(lo0, a_lo, split, a_hi), rect_loop(split, b_lo, hi0, b_hi)};
    f.shared_a = {split, std::max(a_lo, b_lo)};
    f.shared_b = {split, std::min(a_hi, b_hi)};
  } else {
    loops = {rect_loop(a_lo, lo0, a_hi, split), rect_loop(b_lo, split, b_hi, hi0)};
    f.shared_a = {std::max(a_lo, b_lo), split};
    f.shared_b = {std::min(a_hi, b_hi), split};
  }
  f.plan = plan_from_loops(loops, grid);
  return f;
}

SynthOptions scene_options(int index, int grid) {
  SynthOptions o;
  o.seed = static_cast<std::uint64_t>(index);
  o.rooms = 2 + index % 5;
  o.grid = grid;
  o.non_manhattan_fraction = 0.25;
  return o;
}

int overlapping_pairs(std::span<const Loop> loops, int width, int height) {
  std::vector<BinaryMask> fills;
  for (const Loop& l : loops) fills.push_back(fill_polygon(l.corners, width, height));
  int pairs = 0;
  for (std::size_t i = 0; i < fills.size(); ++i) {
    for (std::size_t j = i + 1; j < fills.size(); ++j) {
      const auto a = fills[i].values();
      const auto b = fills[j].values();
      for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] && b[k]) {
          ++pairs;
          break;
        }
      }
    }
  }
  return pairs;
}

std::vector<Pixel> segment_band(Pixel a, Pixel b, double radius, double trim, int width, int height) {
  const Vec2 pa(a), pb(b);
  const double len = distance(pa, pb);
  const Vec2 dir = (1.0 / len) * (pb - pa);
  std::vector<Pixel> out;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Vec2 p{static_cast<double>(x), static_cast<double>(y)};
      const double t = dot(p - pa, dir);
      if (t < trim || t > len - trim) continue;
      if (std::abs(cross(dir, p - pa)) <= radius) out.push_back({x, y});
    }
  }
  return out;
}

}  // namespace floorsp::testing
