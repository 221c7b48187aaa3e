#include "floorsp/dominant_dirs.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "floorsp/energy.hpp"

namespace floorsp {

namespace {

constexpr double kMinFrameShare = 0.1;

int frame_bin(int theta, int quarter) {
  return ((theta + 90 * quarter) / kDirectionBinDegrees) % kDirectionBins;
}

}  // namespace

DirectionAlphabet DirectionAlphabet::from_frames(std::vector<int> frames, double tolerance) {
  std::sort(frames.begin(), frames.end());
  frames.erase(std::unique(frames.begin(), frames.end()), frames.end());
  DirectionAlphabet a;
  a.tolerance = tolerance;
  for (const int f : frames) {
    for (int q = 0; q < 4; ++q) a.directions.push_back(f + 90 * q);
  }
  std::sort(a.directions.begin(), a.directions.end());
  a.frames = std::move(frames);
  return a;
}

bool DirectionAlphabet::admits(double angle_deg) const {
  for (const int d : directions) {
    double diff = std::fmod(std::abs(angle_deg - d), 360.0);
    if (diff > 180.0) diff = 360.0 - diff;
    if (diff <= tolerance + 1e-9) return true;
  }
  return false;
}

DirectionIntegral::DirectionIntegral(std::span<const Grid2D> bins) {
  assert(bins.size() == static_cast<std::size_t>(kDirectionBins));
  width_ = bins.front().width();
  height_ = bins.front().height();
  const std::size_t stride = static_cast<std::size_t>(width_) + 1;
  tables_.assign(bins.size(), std::vector<double>(stride * (height_ + 1), 0.0));
  for (std::size_t b = 0; b < bins.size(); ++b) {
    auto& t = tables_[b];
    for (int y = 0; y < height_; ++y) {
      double row = 0.0;
      for (int x = 0; x < width_; ++x) {
        row += bins[b](x, y);
        t[(y + 1) * stride + (x + 1)] = t[y * stride + (x + 1)] + row;
      }
    }
  }
}

double DirectionIntegral::bin_sum(int bin, const BoundingBox& box) const {
  const std::size_t stride = static_cast<std::size_t>(width_) + 1;
  const auto& t = tables_[static_cast<std::size_t>(bin)];
  const int x0 = std::max(0, box.min.x), y0 = std::max(0, box.min.y);
  const int x1 = std::min(width_ - 1, box.max.x) + 1, y1 = std::min(height_ - 1, box.max.y) + 1;
  if (x0 >= x1 || y0 >= y1) return 0.0;
  return t[y1 * stride + x1] - t[y0 * stride + x1] - t[y1 * stride + x0] + t[y0 * stride + x0];
}

double DirectionIntegral::frame_score(int theta, const BoundingBox& box) const {
  double s = 0.0;
  for (int q = 0; q < 4; ++q) s += bin_sum(frame_bin(theta, q), box);
  return s;
}

std::array<ManhattanFrame, kFrameCount> extract_global_frames(std::span<const Grid2D> bins) {
  const DirectionIntegral integral(bins);
  const BoundingBox all = integral.full_box();
  std::vector<std::pair<double, int>> scored;
  for (int theta = 0; theta < 90; theta += kDirectionBinDegrees) {
    scored.emplace_back(integral.frame_score(theta, all), theta);
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::array<ManhattanFrame, kFrameCount> out;
  for (int i = 0; i < kFrameCount; ++i) out[i] = {scored[i].second};
  return out;
}

DirectionAlphabet assign_room_frames(const std::array<ManhattanFrame, kFrameCount>& frames,
                                     const DirectionIntegral& directions, const BoundingBox& box,
                                     std::span<const SolvedLoop> neighbours, double tolerance) {
  std::vector<std::pair<double, int>> ranked;
  for (const auto& f : frames) ranked.emplace_back(directions.frame_score(f.theta, box), f.theta);
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

  std::vector<int> chosen;
  const double best = ranked.front().first;
  if (best > 0.0) {
    for (std::size_t i = 0; i < ranked.size() && chosen.size() < 2; ++i) {
      if (ranked[i].first > 0.0 && ranked[i].first >= kMinFrameShare * best) chosen.push_back(ranked[i].second);
    }
  } else {
    chosen = {frames[0].theta, frames[1].theta};
  }

  for (const auto& n : neighbours) {
    if (n.loop == nullptr) continue;
    const auto pixels = loop_edge_pixels(*n.loop);
    const bool enters = std::any_of(pixels.begin(), pixels.end(), [&](Pixel p) { return box.contains(p); });
    if (enters) chosen.insert(chosen.end(), n.frames.begin(), n.frames.end());
  }
  return DirectionAlphabet::from_frames(std::move(chosen), tolerance);
}

}  // namespace floorsp
