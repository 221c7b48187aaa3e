#ifndef FLOORSP_ENERGY_HPP
#define FLOORSP_ENERGY_HPP

#include <optional>
#include <span>
#include <vector>

#include "floorsp/geometry.hpp"
#include "floorsp/likelihood.hpp"

namespace floorsp {

/// Relative weights of the penalty terms. Defaults are the published
/// settings (0.2, 0.2, 100, 0.2, 0.1, 1.0).
struct Weights {
  double corner = 0.2;              // corner likelihood penalty per corner pixel
  double edge = 0.2;                // edge likelihood penalty per edge pixel
  double interior = 100.0;          // edge pixel inside any room segment
  double corner_consistency = 0.2;  // per pixel used as a corner by any loop
  double edge_consistency = 0.1;    // per pixel used as an edge by any loop
  double complexity = 1.0;          // per corner

  bool valid() const {
    return corner >= 0 && edge >= 0 && interior >= 0 && corner_consistency >= 0 && edge_consistency >= 0 &&
           complexity >= 0;
  }
  static Weights zero() { return {0, 0, 0, 0, 0, 0}; }
};

/// Corner positions of a loop, sorted, duplicates collapsed.
std::vector<Pixel> loop_corner_pixels(const Loop& loop);

/// Bresenham pixels of from -> to without the destination pixel.
std::vector<Pixel> edge_trace(Pixel from, Pixel to);

/// Union of edge_trace over the loop's edges, sorted and unique. Each
/// traversal pixel of a closed loop appears once.
std::vector<Pixel> loop_edge_pixels(const Loop& loop);

struct DataTerm {
  double corner = 0.0;
  double edge = 0.0;
  double interior = 0.0;
  double total() const { return corner + edge + interior; }
};

struct EnergyBreakdown {
  double data_corner = 0.0;
  double data_edge = 0.0;
  double data_interior = 0.0;
  double consistency_corner = 0.0;
  double consistency_edge = 0.0;
  double model = 0.0;

  double data() const { return data_corner + data_edge + data_interior; }
  double consistency() const { return consistency_corner + consistency_edge; }
  double total() const { return data() + consistency() + model; }
};

/// Evaluates the objective against fixed likelihood maps. Keeps a reference
/// to `maps`, which must outlive the model.
class EnergyModel {
 public:
  EnergyModel(const LikelihoodBundle& maps, const Weights& weights);

  const LikelihoodBundle& maps() const { return *maps_; }
  const Weights& weights() const { return weights_; }
  const BinaryMask& interior() const { return interior_; }

  /// 1 - corner likelihood; off-grid pixels count as likelihood 0.
  double corner_penalty(Pixel p) const;
  double edge_penalty(Pixel p) const;
  bool inside_any_segment(Pixel p) const;

  DataTerm data_term(const Loop& loop) const;
  EnergyBreakdown total_energy(std::span<const std::optional<Loop>> loops) const;
  EnergyBreakdown total_energy(std::span<const Loop> loops) const;

 private:
  const LikelihoodBundle* maps_;
  Weights weights_;
  BinaryMask interior_;
};

/// Corner and edge consistency contributions of the union of loops.
EnergyBreakdown consistency_term(std::span<const Loop> loops, const Weights& weights);
double model_term(const Loop& loop, const Weights& weights);

}  // namespace floorsp

#endif  // FLOORSP_ENERGY_HPP
