#ifndef FLOORSP_ORACLE_HPP
#define FLOORSP_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "floorsp/geometry.hpp"
#include "floorsp/likelihood.hpp"

namespace floorsp {

struct Room {
  int id = 0;
  Loop loop;
  friend bool operator==(const Room&, const Room&) = default;
};

/// Synthetic annotated floorplan. `frame` is the room's wall frame in
/// degrees (0 for axis-aligned rooms).
struct GroundTruthPlan {
  int width = 256;
  int height = 256;
  std::vector<Room> rooms;
  std::vector<int> frames;

  friend bool operator==(const GroundTruthPlan&, const GroundTruthPlan&) = default;
};

struct SynthOptions {
  std::uint64_t seed = 0;
  int rooms = 4;
  int grid = 256;
  double non_manhattan_fraction = 0.0;
};

/// Recursive axis-aligned splits of a central region; floor(fraction * rooms)
/// cells are replaced by a rectangle rotated onto a 10-degree frame whose
/// edge offsets are exact ray offsets. Distinct corners are kept at least
/// 8 px apart (Chebyshev). Throws GenerationFailed after bounded retries and
/// std::invalid_argument when rooms is outside [1, 16].
GroundTruthPlan synth_plan(const SynthOptions& options);

/// Half-size of the square corner footprint (7x7).
inline constexpr int kCornerRadius = 3;
/// Pixels within this distance of an edge belong to the 5 px stroke.
inline constexpr double kStrokeHalfWidth = 2.0;

Grid2D render_corner_map(const GroundTruthPlan& plan);
Grid2D render_edge_map(const GroundTruthPlan& plan);

/// Direction bin of a wall with the given vector (rounded to the nearest
/// 10 degrees, halves away from zero).
int direction_bin(Vec2 edge);

std::vector<Grid2D> render_direction_map(const GroundTruthPlan& plan);

/// Strict interior fill of every room, eroded with 8-connectivity.
std::vector<BinaryMask> render_room_segments(const GroundTruthPlan& plan, int erosion_iterations = 2);

LikelihoodBundle render_bundle(const GroundTruthPlan& plan, int erosion_iterations = 2);

/// Paints a full 7x7 corner footprint centred at p (clipped to the grid).
void paint_corner(Grid2D& grid, Pixel p, float value = 1.0f);

struct NoiseSpec {
  double jitter_sigma = 0.0;   // Gaussian value noise on every likelihood map
  double corner_drop = 0.0;    // probability of erasing each corner footprint
  double corner_spurious = 0.0;// per-pixel rate of extra corner footprints
  double mask_flip = 0.0;      // flip probability for segment boundary pixels

  bool is_zero() const {
    return jitter_sigma == 0.0 && corner_drop == 0.0 && corner_spurious == 0.0 && mask_flip == 0.0;
  }
};

struct PerturbReport {
  int dropped_corners = 0;
  int spurious_corners = 0;
  int flipped_mask_pixels = 0;
};

/// Deterministic per seed. Order: corner dropout, spurious corners, value
/// jitter (clamped to [0, 1]), segment boundary flips.
LikelihoodBundle perturb(const LikelihoodBundle& bundle, const NoiseSpec& noise, std::uint64_t seed,
                         PerturbReport* report = nullptr);

}  // namespace floorsp

#endif  // FLOORSP_ORACLE_HPP
