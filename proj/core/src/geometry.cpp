#include "floorsp/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

namespace floorsp {

Vec2 unit_vector(int degrees) {
  int a = degrees % 360;
  if (a < 0) a += 360;
  const int quadrant = a / 90;
  const double base = (a % 90) * std::numbers::pi / 180.0;
  const double c = std::cos(base);
  const double s = std::sin(base);
  switch (quadrant) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

Pixel ray_offset(int degrees, int t) {
  const Vec2 d = unit_vector(degrees);
  return round_to_pixel(Vec2{t * d.x, t * d.y});
}

double angle_degrees(Vec2 v) {
  double a = std::atan2(v.y, v.x) * 180.0 / std::numbers::pi;
  if (a < 0.0) a += 360.0;
  if (a >= 360.0) a -= 360.0;
  return a;
}

double line_angle_difference(double a_deg, double b_deg) {
  double d = std::fmod(std::abs(a_deg - b_deg), 180.0);
  if (d > 90.0) d = 180.0 - d;
  return d;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

namespace {

int orientation(Vec2 a, Vec2 b, Vec2 c, double eps) {
  const double v = cross(b - a, c - a);
  if (v > eps) return 1;
  if (v < -eps) return -1;
  return 0;
}

bool on_segment(Vec2 p, Vec2 a, Vec2 b, double eps) {
  return p.x >= std::min(a.x, b.x) - eps && p.x <= std::max(a.x, b.x) + eps &&
         p.y >= std::min(a.y, b.y) - eps && p.y <= std::max(a.y, b.y) + eps;
}

}  // namespace

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double eps) {
  const int o1 = orientation(a, b, c, eps);
  const int o2 = orientation(a, b, d, eps);
  const int o3 = orientation(c, d, a, eps);
  const int o4 = orientation(c, d, b, eps);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(c, a, b, eps)) return true;
  if (o2 == 0 && on_segment(d, a, b, eps)) return true;
  if (o3 == 0 && on_segment(a, c, d, eps)) return true;
  if (o4 == 0 && on_segment(b, c, d, eps)) return true;
  return false;
}

bool is_valid_loop(const Loop& loop) {
  const std::size_t n = loop.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (loop.corners[i] == loop.corner(i + 1)) return false;
  }
  return true;
}

Loop remove_straight_corners(const Loop& loop) {
  std::vector<Pixel> pts;
  for (const Pixel p : loop.corners) {
    if (pts.empty() || pts.back() != p) pts.push_back(p);
  }
  while (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();

  bool changed = true;
  while (changed && pts.size() > 3) {
    changed = false;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Pixel prev = pts[(i + n - 1) % n];
      const Pixel cur = pts[i];
      const Pixel next = pts[(i + 1) % n];
      const Pixel in = cur - prev;
      const Pixel out = next - cur;
      const long long c = static_cast<long long>(in.x) * out.y - static_cast<long long>(in.y) * out.x;
      const long long d = static_cast<long long>(in.x) * out.x + static_cast<long long>(in.y) * out.y;
      if (c == 0 && d > 0) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return Loop{std::move(pts)};
}

BinaryMask fill_polygon(const std::vector<Pixel>& corners, int width, int height) {
  BinaryMask out(width, height, 0);
  const std::size_t n = corners.size();
  if (n < 3) return out;

  std::vector<double> xs;
  for (int y = 0; y < height; ++y) {
    xs.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const Pixel a = corners[i];
      const Pixel b = corners[(i + 1) % n];
      if (a.y == b.y) continue;
      const bool crosses = (a.y <= y && y < b.y) || (b.y <= y && y < a.y);
      if (!crosses) continue;
      xs.push_back(a.x + static_cast<double>(y - a.y) * (b.x - a.x) / static_cast<double>(b.y - a.y));
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      const int x0 = std::max(0, static_cast<int>(std::floor(xs[k])) + 1);
      const int x1 = std::min(width - 1, static_cast<int>(std::ceil(xs[k + 1])) - 1);
      for (int x = x0; x <= x1; ++x) out(x, y) = 1;
    }
  }

  // Clear lattice points lying exactly on an edge.
  for (std::size_t i = 0; i < n; ++i) {
    const Pixel a = corners[i];
    const Pixel b = corners[(i + 1) % n];
    const int dx = b.x - a.x;
    const int dy = b.y - a.y;
    const int g = std::gcd(std::abs(dx), std::abs(dy));
    if (g == 0) continue;
    for (int k = 0; k <= g; ++k) {
      const Pixel p{a.x + k * dx / g, a.y + k * dy / g};
      if (out.contains(p)) out[p] = 0;
    }
  }
  return out;
}

}  // namespace floorsp
