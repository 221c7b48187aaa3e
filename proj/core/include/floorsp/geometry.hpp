#ifndef FLOORSP_GEOMETRY_HPP
#define FLOORSP_GEOMETRY_HPP

#include <cmath>
#include <vector>

#include "floorsp/grid.hpp"

namespace floorsp {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}
  constexpr explicit Vec2(Pixel p) : x(p.x), y(p.y) {}

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline Vec2 normalized(Vec2 v) {
  const double n = norm(v);
  return n > 0.0 ? Vec2{v.x / n, v.y / n} : Vec2{};
}
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline double distance(Pixel a, Pixel b) { return distance(Vec2(a), Vec2(b)); }

/// Nearest pixel, halves rounded away from zero.
inline Pixel round_to_pixel(Vec2 v) {
  return {static_cast<int>(std::lround(v.x)), static_cast<int>(std::lround(v.y))};
}

/// Unit vector for an integer angle in degrees, measured from +x toward +y
/// (image rows grow downward). Quarter turns and negation are exact:
/// unit_vector(a + 90) == (-s, c) and unit_vector(a + 180) == -unit_vector(a)
/// bit for bit.
Vec2 unit_vector(int degrees);

/// Ray offset round(t * unit_vector(degrees)).
Pixel ray_offset(int degrees, int t);

/// Angle of v in [0, 360) degrees.
double angle_degrees(Vec2 v);

/// Smallest angle between two undirected lines, in [0, 90].
double line_angle_difference(double a_deg, double b_deg);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// True when closed segments [a, b] and [c, d] share at least one point
/// (touching counts), within `eps`.
bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double eps = 1e-9);

/// Closed polygonal loop of integer corners; the last corner connects back
/// to the first.
struct Loop {
  std::vector<Pixel> corners;

  std::size_t size() const { return corners.size(); }
  Pixel corner(std::size_t i) const { return corners[i % corners.size()]; }
  friend bool operator==(const Loop&, const Loop&) = default;
};

/// At least three corners and no two consecutive corners equal.
bool is_valid_loop(const Loop& loop);

/// Removes corners whose incoming and outgoing edges continue in the same
/// direction, and consecutive duplicates.
Loop remove_straight_corners(const Loop& loop);

/// Pixels whose centres lie strictly inside the polygon (even-odd rule).
/// Pixels on the boundary are not set.
BinaryMask fill_polygon(const std::vector<Pixel>& corners, int width, int height);

}  // namespace floorsp

#endif  // FLOORSP_GEOMETRY_HPP
