#ifndef FLOORSP_DOMINANT_DIRS_HPP
#define FLOORSP_DOMINANT_DIRS_HPP

#include <array>
#include <span>
#include <vector>

#include "floorsp/geometry.hpp"
#include "floorsp/likelihood.hpp"

namespace floorsp {

/// Four mutually orthogonal wall directions {theta, +90, +180, +270};
/// theta is a multiple of 10 in [0, 90).
struct ManhattanFrame {
  int theta = 0;
  friend bool operator==(ManhattanFrame, ManhattanFrame) = default;
};

inline constexpr int kFrameCount = 4;
inline constexpr double kDefaultDirectionTolerance = 5.0;

/// Wall directions (degrees, multiples of 10) a room's edges may follow.
struct DirectionAlphabet {
  std::vector<int> frames;      // frame thetas, sorted
  std::vector<int> directions;  // every frame's four directions, sorted
  double tolerance = kDefaultDirectionTolerance;

  static DirectionAlphabet from_frames(std::vector<int> frames, double tolerance = kDefaultDirectionTolerance);

  /// True when `angle_deg` lies within the tolerance of an alphabet direction.
  bool admits(double angle_deg) const;
};

/// Per-bin summed-area tables over the direction stack; box sums in O(1).
class DirectionIntegral {
 public:
  explicit DirectionIntegral(std::span<const Grid2D> bins);

  double bin_sum(int bin, const BoundingBox& box) const;
  /// Sum of the frame's four bins over the box.
  double frame_score(int theta, const BoundingBox& box) const;
  BoundingBox full_box() const { return {{0, 0}, {width_ - 1, height_ - 1}}; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::vector<double>> tables_;
};

/// Greedy top four of the nine candidate frames by summed likelihood over the
/// whole stack; ties go to the smaller theta.
std::array<ManhattanFrame, kFrameCount> extract_global_frames(std::span<const Grid2D> bins);

/// A solved room loop and the frames it was built with.
struct SolvedLoop {
  const Loop* loop = nullptr;
  std::vector<int> frames;
};

/// Ranks the global frames by likelihood inside `box`, keeps the best two
/// that carry signal (score > 0 and at least 10% of the best), falls back to
/// the top two global frames when the box has no signal, and adds the frames
/// of neighbouring loops whose trace enters the box.
DirectionAlphabet assign_room_frames(const std::array<ManhattanFrame, kFrameCount>& frames,
                                     const DirectionIntegral& directions, const BoundingBox& box,
                                     std::span<const SolvedLoop> neighbours,
                                     double tolerance = kDefaultDirectionTolerance);

}  // namespace floorsp

#endif  // FLOORSP_DOMINANT_DIRS_HPP
