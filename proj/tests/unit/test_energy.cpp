#include <gtest/gtest.h>

#include <algorithm>
#include <iterator>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "floorsp/energy.hpp"
#include "floorsp/oracle.hpp"
#include "oracles.hpp"

using namespace floorsp;
using floorsp::testing::plan_from_loops;
using floorsp::testing::rect_loop;
using floorsp::testing::reference_energy;

namespace {

LikelihoodBundle blank_maps(int w, int h, int rooms = 0) {
  LikelihoodBundle b;
  b.corner = Grid2D(w, h, 0.0f);
  b.edge = Grid2D(w, h, 0.0f);
  b.direction.assign(kDirectionBins, Grid2D(w, h, 0.0f));
  b.segments.assign(rooms, BinaryMask(w, h, 0));
  return b;
}

LikelihoodBundle random_maps(std::mt19937& rng, int w, int h) {
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  std::bernoulli_distribution bit(0.2);
  LikelihoodBundle b = blank_maps(w, h, 2);
  for (auto& v : b.corner.values()) v = u(rng);
  for (auto& v : b.edge.values()) v = u(rng);
  for (auto& s : b.segments)
    for (auto& v : s.values()) v = bit(rng);
  return b;
}

Loop random_loop(std::mt19937& rng, int w, int h) {
  std::uniform_int_distribution<int> n(3, 7), x(-2, w + 1), y(-2, h + 1);
  Loop l;
  const int k = n(rng);
  while (static_cast<int>(l.size()) < k) {
    const Pixel p{x(rng), y(rng)};
    if (!l.corners.empty() && l.corners.back() == p) continue;
    l.corners.push_back(p);
  }
  if (l.corners.front() == l.corners.back()) l.corners.back().x += 1;
  return l;
}

}  // namespace

TEST(PixelSets, SquareCornersAndPerimeter) {
  const Loop sq = rect_loop(0, 0, 3, 3);
  EXPECT_EQ(loop_corner_pixels(sq).size(), 4u);
  EXPECT_EQ(loop_edge_pixels(sq).size(), 12u);
  const Loop revisit{{{0, 0}, {4, 0}, {4, 4}, {0, 0}, {0, 4}}};
  EXPECT_EQ(loop_corner_pixels(revisit).size(), 4u);
}

TEST(PixelSets, EdgeTraceDropsDestination) {
  const auto t = edge_trace({0, 0}, {3, 0});
  EXPECT_EQ(t, (std::vector<Pixel>{{0, 0}, {1, 0}, {2, 0}}));
}

TEST(PixelSets, SliverUnionMatchesEnumeration) {
  const Loop sliver{{{0, 0}, {6, 1}, {1, 0}}};
  std::set<Pixel> expected;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto line = bresenham_line(sliver.corner(i), sliver.corner(i + 1));
    expected.insert(line.begin(), line.end() - 1);
  }
  const auto got = loop_edge_pixels(sliver);
  EXPECT_EQ(std::set<Pixel>(got.begin(), got.end()), expected);
}

TEST(DataTerm, ZeroMapsSquare) {
  const auto maps = blank_maps(20, 20);
  const EnergyModel e(maps, Weights{});
  const Loop sq = rect_loop(2, 2, 10, 10);  // perimeter 32
  const DataTerm d = e.data_term(sq);
  EXPECT_NEAR(d.corner, 0.2 * 4, 1e-12);
  EXPECT_NEAR(d.edge, 0.2 * 32, 1e-12);
  EXPECT_EQ(d.interior, 0.0);
}

TEST(DataTerm, SegmentCrossingCostsHundredPerPixel) {
  auto maps = blank_maps(20, 20, 1);
  for (int y = 0; y < 20; ++y) maps.segments[0](6, y) = 1;  // a vertical band, hit once by each horizontal edge
  const EnergyModel e(maps, Weights{});
  const DataTerm d = e.data_term(rect_loop(2, 2, 10, 10));
  EXPECT_NEAR(d.interior, 100.0 * 2, 1e-9);
}

TEST(DataTerm, CleanTruthHasNoLikelihoodCost) {
  const auto plan = plan_from_loops({rect_loop(20, 20, 70, 60)}, 96);
  const auto maps = render_bundle(plan);
  const EnergyModel e(maps, Weights{});
  const DataTerm d = e.data_term(plan.rooms[0].loop);
  EXPECT_EQ(d.corner, 0.0);
  EXPECT_EQ(d.edge, 0.0);
  EXPECT_EQ(d.interior, 0.0);
}

TEST(Consistency, DisjointCoincidentAndEmpty) {
  const Weights w;
  const std::vector<Loop> two{rect_loop(0, 0, 4, 4), rect_loop(10, 10, 16, 13)};
  const auto b = consistency_term(two, w);
  EXPECT_NEAR(b.consistency(), 0.2 * 8 + 0.1 * (16 + 18), 1e-12);
  const std::vector<Loop> same{rect_loop(0, 0, 4, 4), rect_loop(0, 0, 4, 4)};
  const std::vector<Loop> one{rect_loop(0, 0, 4, 4)};
  EXPECT_EQ(consistency_term(same, w).consistency(), consistency_term(one, w).consistency());
  EXPECT_EQ(consistency_term(std::vector<Loop>{}, w).consistency(), 0.0);
}

TEST(ModelTerm, CountsCorners) {
  const Weights w;
  EXPECT_EQ(model_term(rect_loop(0, 0, 3, 3), w), 4.0);
  EXPECT_EQ(model_term((Loop{{{0, 0}, {3, 0}, {0, 3}}}), w), 3.0);
  Loop many;
  for (int i = 0; i < 17; ++i) many.corners.push_back({i, i * i});
  EXPECT_EQ(model_term(many, w), 17.0);
}

TEST(TotalEnergy, SingleCleanRoom) {
  const auto plan = plan_from_loops({rect_loop(20, 20, 70, 60)}, 96);
  const auto maps = render_bundle(plan);
  const EnergyModel e(maps, Weights{});
  const std::vector<Loop> loops{plan.rooms[0].loop};
  const auto t = e.total_energy(loops);
  EXPECT_NEAR(t.total(), 1.0 * 4 + 0.2 * 4 + 0.1 * (2 * 50 + 2 * 40), 1e-9);
  EXPECT_EQ(EnergyModel(maps, Weights::zero()).total_energy(loops).total(), 0.0);
}

TEST(TotalEnergy, HandComputedTwoRoomToy) {
  // Two 4x4 rooms sharing the wall x = 4 on blank maps.
  const auto maps = blank_maps(12, 12);
  const EnergyModel e(maps, Weights{});
  const std::vector<Loop> loops{rect_loop(0, 0, 4, 4), rect_loop(4, 0, 8, 4)};
  // Corners: 6 distinct pixels. Edge pixels: 16 + 16 - 5 shared on x = 4.
  const double data = 2 * (0.2 * 4 + 0.2 * 16);
  const double consis = 0.2 * 6 + 0.1 * 27;
  const double model = 8.0;
  EXPECT_NEAR(e.total_energy(loops).total(), data + consis + model, 1e-12);
}

TEST(TotalEnergy, MatchesReferenceOnRandomStates) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto maps = random_maps(rng, 24, 20);
    std::vector<Loop> loops;
    for (int k = 0; k < 3; ++k) loops.push_back(random_loop(rng, 24, 20));
    const Weights w;
    const EnergyModel e(maps, w);
    const auto ref = reference_energy(maps, w, loops);
    const auto got = e.total_energy(loops);
    ASSERT_NEAR(got.data(), ref.data, 1e-9);
    ASSERT_NEAR(got.consistency(), ref.consistency, 1e-9);
    ASSERT_NEAR(got.model, ref.model, 1e-12);
  }
}

TEST(TotalEnergy, InvariantUnderRotationAndReversal) {
  std::mt19937 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const auto maps = random_maps(rng, 24, 20);
    const EnergyModel e(maps, Weights{});
    std::vector<Loop> loops{random_loop(rng, 24, 20), random_loop(rng, 24, 20)};
    const double base = e.total_energy(loops).total();
    std::rotate(loops[0].corners.begin(), loops[0].corners.begin() + 1, loops[0].corners.end());
    std::reverse(loops[1].corners.begin(), loops[1].corners.end());
    ASSERT_NEAR(e.total_energy(loops).total(), base, 1e-9);
  }
}

TEST(TotalEnergy, OptionalLoopsSkipUnsolvedRooms) {
  const auto maps = blank_maps(12, 12);
  const EnergyModel e(maps, Weights{});
  const std::vector<std::optional<Loop>> partial{std::nullopt, rect_loop(1, 1, 5, 5)};
  const std::vector<Loop> solved{rect_loop(1, 1, 5, 5)};
  EXPECT_EQ(e.total_energy(partial).total(), e.total_energy(solved).total());
}

TEST(Consistency, UnionNeverExceedsSumAndEqualsItWhenDisjoint) {
  std::mt19937 rng(33);
  const Weights w;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Loop> loops{random_loop(rng, 16, 16), random_loop(rng, 16, 16)};
    double sum = 0.0;
    for (const Loop& l : loops) {
      sum += w.corner_consistency * loop_corner_pixels(l).size() + w.edge_consistency * loop_edge_pixels(l).size();
    }
    const auto ca = loop_corner_pixels(loops[0]), cb = loop_corner_pixels(loops[1]);
    const auto ea = loop_edge_pixels(loops[0]), eb = loop_edge_pixels(loops[1]);
    std::vector<Pixel> ci, ei;
    std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(), std::back_inserter(ci));
    std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(ei));
    const double u = consistency_term(loops, w).consistency();
    ASSERT_LE(u, sum + 1e-12);
    if (ci.empty() && ei.empty()) {
      ASSERT_NEAR(u, sum, 1e-12);
    } else {
      ASSERT_LT(u, sum);
    }
  }
}

TEST(Consistency, OffsetDuplicateCostsMoreThanCoincidence) {
  const Weights w;
  for (int s = 3; s < 12; ++s) {
    const Loop a = rect_loop(5, 5, 5 + s, 5 + s + 2);
    const Loop shifted = rect_loop(6, 5, 6 + s, 5 + s + 2);
    const double same = consistency_term(std::vector<Loop>{a, a}, w).consistency();
    const double offset = consistency_term(std::vector<Loop>{a, shifted}, w).consistency();
    EXPECT_GT(offset, same);
  }
}
