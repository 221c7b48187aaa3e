#include "floorsp/grid.hpp"

#include <cstdlib>

#include "floorsp/errors.hpp"

namespace floorsp {

std::vector<Pixel> bresenham_line(Pixel a, Pixel b) {
  const bool swapped = b < a;
  Pixel p = swapped ? b : a;
  const Pixel q = swapped ? a : b;

  const int dx = std::abs(q.x - p.x);
  const int dy = -std::abs(q.y - p.y);
  const int sx = p.x < q.x ? 1 : -1;
  const int sy = p.y < q.y ? 1 : -1;
  int err = dx + dy;

  std::vector<Pixel> out;
  out.reserve(static_cast<std::size_t>(std::max(dx, -dy)) + 1);
  for (;;) {
    out.push_back(p);
    if (p == q) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      p.x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      p.y += sy;
    }
  }
  if (swapped) std::reverse(out.begin(), out.end());
  return out;
}

namespace {

template <bool kDilate>
BinaryMask morph_step(const BinaryMask& in, Connectivity connectivity) {
  static constexpr int kEight[8][2] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}};
  static constexpr int kFour[4][2] = {{0, -1}, {-1, 0}, {1, 0}, {0, 1}};
  const int w = in.width();
  const int h = in.height();
  BinaryMask out(w, h, 0);
  const bool eight = connectivity == Connectivity::kEight;
  const int n = eight ? 8 : 4;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool v = in(x, y) != 0;
      for (int k = 0; k < n; ++k) {
        const int nx = x + (eight ? kEight[k][0] : kFour[k][0]);
        const int ny = y + (eight ? kEight[k][1] : kFour[k][1]);
        const bool nb = in.contains(nx, ny) && in(nx, ny) != 0;
        if constexpr (kDilate) {
          v = v || nb;
        } else {
          v = v && nb;
        }
      }
      out(x, y) = v ? 1 : 0;
    }
  }
  return out;
}

}  // namespace

BinaryMask dilate(const BinaryMask& mask, int iterations, Connectivity connectivity) {
  BinaryMask out = mask;
  for (int i = 0; i < iterations; ++i) out = morph_step<true>(out, connectivity);
  return out;
}

BinaryMask erode(const BinaryMask& mask, int iterations, Connectivity connectivity) {
  BinaryMask out = mask;
  for (int i = 0; i < iterations; ++i) out = morph_step<false>(out, connectivity);
  return out;
}

BoundingBox bounding_box(const BinaryMask& mask, int margin) {
  int min_x = mask.width(), min_y = mask.height(), max_x = -1, max_y = -1;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask(x, y)) continue;
      min_x = std::min(min_x, x);
      min_y = std::min(min_y, y);
      max_x = std::max(max_x, x);
      max_y = std::max(max_y, y);
    }
  }
  if (max_x < 0) throw EmptyMask();
  return {{std::max(0, min_x - margin), std::max(0, min_y - margin)},
          {std::min(mask.width() - 1, max_x + margin), std::min(mask.height() - 1, max_y + margin)}};
}

std::size_t count_set(const BinaryMask& mask) {
  return static_cast<std::size_t>(std::count_if(mask.values().begin(), mask.values().end(),
                                                [](std::uint8_t v) { return v != 0; }));
}

BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b) {
  assert(a.same_shape(b));
  BinaryMask out = a;
  auto dst = out.values();
  auto src = b.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = (dst[i] | src[i]) ? 1 : 0;
  return out;
}

}  // namespace floorsp
