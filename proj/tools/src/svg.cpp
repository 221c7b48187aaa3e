#include "svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace floorsp::cli {

namespace {

constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string render_svg(const Floorplan& plan, const SvgOptions& options) {
  int w = plan.width, h = plan.height;
  if (options.underlay) {
    w = std::max(w, options.underlay->width());
    h = std::max(h, options.underlay->height());
  }
  for (const Room& r : plan.rooms) {
    for (const Pixel p : r.loop.corners) {
      w = std::max(w, p.x + 1);
      h = std::max(h, p.y + 1);
    }
  }
  for (const Pixel p : plan.graph.vertices) {
    w = std::max(w, p.x + 1);
    h = std::max(h, p.y + 1);
  }
  w = std::max(w, 1);
  h = std::max(h, 1);
  const double s = options.scale;
  auto X = [&](double x) { return num((x + 0.5) * s); };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w * options.scale << "\" height=\""
      << h * options.scale << "\" viewBox=\"0 0 " << w * options.scale << ' ' << h * options.scale << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << w * options.scale << "\" height=\"" << h * options.scale
      << "\" fill=\"#ffffff\"/>\n";

  if (options.underlay) {
    const Grid2D& g = *options.underlay;
    out << "<g id=\"underlay\">\n";
    for (int y = 0; y < g.height(); ++y) {
      for (int x = 0; x < g.width(); ++x) {
        const float v = std::clamp(g(x, y), 0.0f, 1.0f);
        if (v < options.underlay_floor) continue;
        const int shade = 255 - static_cast<int>(v * 160.0f + 0.5f);
        char fill[8];
        std::snprintf(fill, sizeof fill, "#%02x%02x%02x", shade, shade, shade);
        out << "<rect x=\"" << x * options.scale << "\" y=\"" << y * options.scale << "\" width=\""
            << options.scale << "\" height=\"" << options.scale << "\" fill=\"" << fill << "\"/>\n";
      }
    }
    out << "</g>\n";
  }

  out << "<g id=\"rooms\" fill-opacity=\"0.25\" stroke-width=\"" << num(s * 0.6) << "\">\n";
  for (std::size_t i = 0; i < plan.rooms.size(); ++i) {
    const Room& r = plan.rooms[i];
    const char* colour = kPalette[i % std::size(kPalette)];
    out << "<polygon data-room=\"" << r.id << "\" fill=\"" << colour << "\" stroke=\"" << colour << "\" points=\"";
    for (std::size_t k = 0; k < r.loop.corners.size(); ++k) {
      if (k) out << ' ';
      out << X(r.loop.corners[k].x) << ',' << X(r.loop.corners[k].y);
    }
    out << "\"/>\n";
  }
  out << "</g>\n";

  out << "<g id=\"graph\" stroke=\"#222222\" stroke-width=\"" << num(s * 0.4) << "\">\n";
  for (const auto& [i, j] : plan.graph.edges) {
    const Pixel a = plan.graph.vertices.at(i);
    const Pixel b = plan.graph.vertices.at(j);
    out << "<line x1=\"" << X(a.x) << "\" y1=\"" << X(a.y) << "\" x2=\"" << X(b.x) << "\" y2=\"" << X(b.y)
        << "\"/>\n";
  }
  out << "</g>\n<g id=\"vertices\" fill=\"#d62728\">\n";
  for (const Pixel p : plan.graph.vertices) {
    out << "<circle cx=\"" << X(p.x) << "\" cy=\"" << X(p.y) << "\" r=\"" << num(s * 0.9) << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace floorsp::cli
