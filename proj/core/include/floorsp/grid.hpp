#ifndef FLOORSP_GRID_HPP
#define FLOORSP_GRID_HPP

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace floorsp {

/// Integer pixel coordinate; x is the column, y the row.
struct Pixel {
  int x = 0;
  int y = 0;

  friend constexpr auto operator<=>(const Pixel&, const Pixel&) = default;
  friend constexpr Pixel operator+(Pixel a, Pixel b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Pixel operator-(Pixel a, Pixel b) { return {a.x - b.x, a.y - b.y}; }
};

/// Dense row-major raster of width x height cells.
template <typename T>
class Raster {
 public:
  using value_type = T;

  Raster() = default;
  Raster(int width, int height, T fill = T{})
      : width_(width), height_(height), values_(static_cast<std::size_t>(width) * height, fill) {
    assert(width >= 0 && height >= 0);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
  bool contains(Pixel p) const { return contains(p.x, p.y); }

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }
  std::size_t index(Pixel p) const { return index(p.x, p.y); }
  Pixel pixel(std::size_t index) const {
    return {static_cast<int>(index % width_), static_cast<int>(index / width_)};
  }

  T& operator()(int x, int y) { return values_[index(x, y)]; }
  const T& operator()(int x, int y) const { return values_[index(x, y)]; }
  T& operator[](Pixel p) { return values_[index(p)]; }
  const T& operator[](Pixel p) const { return values_[index(p)]; }

  /// Value at p, or `outside` when p is off the raster.
  T value_or(Pixel p, T outside) const { return contains(p) ? (*this)[p] : outside; }

  std::span<T> values() { return values_; }
  std::span<const T> values() const { return values_; }

  bool same_shape(int width, int height) const { return width_ == width && height_ == height; }
  template <typename U>
  bool same_shape(const Raster<U>& other) const {
    return same_shape(other.width(), other.height());
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> values_;
};

/// Scalar raster: likelihoods, densities, penalty fields.
using Grid2D = Raster<float>;

/// Boolean raster stored one byte per pixel (0 or 1).
using BinaryMask = Raster<std::uint8_t>;

/// Axis-aligned box with inclusive corners.
struct BoundingBox {
  Pixel min;
  Pixel max;

  int width() const { return max.x - min.x + 1; }
  int height() const { return max.y - min.y + 1; }
  std::size_t area() const { return static_cast<std::size_t>(width()) * static_cast<std::size_t>(height()); }
  bool contains(Pixel p) const { return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y; }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

enum class Connectivity { kFour = 4, kEight = 8 };

/// Bresenham trace from a to b, both endpoints included.
///
/// Uses the integer-error formulation and always walks from the
/// lexicographically smaller endpoint, so the pixel set does not depend on
/// direction; the list is reversed when a > b.
std::vector<Pixel> bresenham_line(Pixel a, Pixel b);

BinaryMask dilate(const BinaryMask& mask, int iterations, Connectivity connectivity = Connectivity::kEight);

/// Out-of-bounds pixels count as unset, so masks shrink at the border.
BinaryMask erode(const BinaryMask& mask, int iterations, Connectivity connectivity = Connectivity::kEight);

/// Tight box of set pixels grown by `margin` and clamped to the raster.
/// Throws EmptyMask when no pixel is set.
BoundingBox bounding_box(const BinaryMask& mask, int margin);

std::size_t count_set(const BinaryMask& mask);

/// Union of two equally shaped masks.
BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b);

}  // namespace floorsp

#endif  // FLOORSP_GRID_HPP
