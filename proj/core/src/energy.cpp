#include "floorsp/energy.hpp"

#include <algorithm>

namespace floorsp {

namespace {

void sort_unique(std::vector<Pixel>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<Pixel> loop_corner_pixels(const Loop& loop) {
  std::vector<Pixel> out = loop.corners;
  sort_unique(out);
  return out;
}

std::vector<Pixel> edge_trace(Pixel from, Pixel to) {
  auto line = bresenham_line(from, to);
  line.pop_back();
  return line;
}

std::vector<Pixel> loop_edge_pixels(const Loop& loop) {
  std::vector<Pixel> out;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const auto trace = edge_trace(loop.corner(i), loop.corner(i + 1));
    out.insert(out.end(), trace.begin(), trace.end());
  }
  sort_unique(out);
  return out;
}

EnergyModel::EnergyModel(const LikelihoodBundle& maps, const Weights& weights)
    : maps_(&maps), weights_(weights), interior_(segments_union(maps)) {}

double EnergyModel::corner_penalty(Pixel p) const { return 1.0 - maps_->corner.value_or(p, 0.0f); }

double EnergyModel::edge_penalty(Pixel p) const { return 1.0 - maps_->edge.value_or(p, 0.0f); }

bool EnergyModel::inside_any_segment(Pixel p) const { return interior_.value_or(p, 0) != 0; }

DataTerm EnergyModel::data_term(const Loop& loop) const {
  DataTerm t;
  for (const Pixel p : loop_corner_pixels(loop)) t.corner += weights_.corner * corner_penalty(p);
  for (const Pixel p : loop_edge_pixels(loop)) {
    t.edge += weights_.edge * edge_penalty(p);
    if (inside_any_segment(p)) t.interior += weights_.interior;
  }
  return t;
}

EnergyBreakdown consistency_term(std::span<const Loop> loops, const Weights& weights) {
  std::vector<Pixel> corners;
  std::vector<Pixel> edges;
  for (const auto& loop : loops) {
    corners.insert(corners.end(), loop.corners.begin(), loop.corners.end());
    const auto e = loop_edge_pixels(loop);
    edges.insert(edges.end(), e.begin(), e.end());
  }
  sort_unique(corners);
  sort_unique(edges);
  EnergyBreakdown b;
  b.consistency_corner = weights.corner_consistency * static_cast<double>(corners.size());
  b.consistency_edge = weights.edge_consistency * static_cast<double>(edges.size());
  return b;
}

double model_term(const Loop& loop, const Weights& weights) {
  return weights.complexity * static_cast<double>(loop.size());
}

EnergyBreakdown EnergyModel::total_energy(std::span<const Loop> loops) const {
  EnergyBreakdown b = consistency_term(loops, weights_);
  for (const auto& loop : loops) {
    const DataTerm d = data_term(loop);
    b.data_corner += d.corner;
    b.data_edge += d.edge;
    b.data_interior += d.interior;
    b.model += model_term(loop, weights_);
  }
  return b;
}

EnergyBreakdown EnergyModel::total_energy(std::span<const std::optional<Loop>> loops) const {
  std::vector<Loop> present;
  for (const auto& l : loops) {
    if (l) present.push_back(*l);
  }
  return total_energy(std::span<const Loop>(present));
}

}  // namespace floorsp
