#ifndef FLOORSP_TESTS_FIXTURES_HPP
#define FLOORSP_TESTS_FIXTURES_HPP

#include <span>
#include <vector>

#include "floorsp/geometry.hpp"
#include "floorsp/likelihood.hpp"
#include "floorsp/oracle.hpp"

namespace floorsp::testing {

/// Axis-aligned rectangle with corners (x0,y0) (x1,y0) (x1,y1) (x0,y1).
Loop rect_loop(int x0, int y0, int x1, int y1);

GroundTruthPlan plan_from_loops(const std::vector<Loop>& loops, int grid, std::vector<int> frames = {});

/// Two rectangles sharing (part of) one wall.
struct TwoRoomFixture {
  GroundTruthPlan plan;
  Pixel shared_a;  // shared wall, from shared_a to shared_b
  Pixel shared_b;
};

/// Deterministic family of side-by-side or stacked room pairs on a
/// `grid` x `grid` raster. Rooms are at least 32 px wide and share at least
/// 24 px of wall.
TwoRoomFixture two_room_fixture(int index, int grid = 128);

/// Options of the seeded scene family: 2 to 6 rooms, at most a quarter of
/// them rotated.
SynthOptions scene_options(int index, int grid = 256);

/// Pairs of loops whose strict interiors share a pixel.
int overlapping_pairs(std::span<const Loop> loops, int width, int height);

/// Pixels within `radius` of segment a-b, keeping `trim` px away from both
/// ends along the segment.
std::vector<Pixel> segment_band(Pixel a, Pixel b, double radius, double trim, int width, int height);

}  // namespace floorsp::testing

#endif  // FLOORSP_TESTS_FIXTURES_HPP
