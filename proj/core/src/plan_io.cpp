#include "floorsp/plan_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "floorsp/errors.hpp"
#include "floorsp/ingest.hpp"

namespace floorsp {

using nlohmann::json;

namespace {

json pixel_json(Pixel p) { return json::array({p.x, p.y}); }

Pixel pixel_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw FormatError("expected [x, y] integer pair");
  return {j[0].get<int>(), j[1].get<int>()};
}

json to_json(const Floorplan& plan) {
  json rooms = json::array();
  for (const Room& r : plan.rooms) {
    json corners = json::array();
    for (const Pixel p : r.loop.corners) corners.push_back(pixel_json(p));
    rooms.push_back({{"id", r.id}, {"corners", corners}});
  }
  json vertices = json::array();
  for (const Pixel p : plan.graph.vertices) vertices.push_back(pixel_json(p));
  json edges = json::array();
  for (const auto& [i, j] : plan.graph.edges) edges.push_back(json::array({i, j}));
  return {{"rooms", rooms}, {"graph", {{"vertices", vertices}, {"edges", edges}}}};
}

Floorplan from_json(const json& j) {
  if (!j.is_object() || !j.contains("rooms") || !j["rooms"].is_array()) throw FormatError("missing \"rooms\" array");
  Floorplan plan;
  for (const json& r : j["rooms"]) {
    if (!r.is_object() || !r.contains("corners") || !r["corners"].is_array())
      throw FormatError("room without \"corners\"");
    Room room;
    room.id = r.contains("id") ? r["id"].get<int>() : static_cast<int>(plan.rooms.size());
    for (const json& c : r["corners"]) room.loop.corners.push_back(pixel_from(c));
    plan.rooms.push_back(std::move(room));
  }
  if (j.contains("graph")) {
    const json& g = j["graph"];
    if (!g.is_object() || !g.contains("vertices") || !g.contains("edges")) throw FormatError("malformed \"graph\"");
    for (const json& v : g["vertices"]) plan.graph.vertices.push_back(pixel_from(v));
    const int n = static_cast<int>(plan.graph.vertices.size());
    for (const json& e : g["edges"]) {
      const Pixel ij = pixel_from(e);
      if (ij.x < 0 || ij.y < 0 || ij.x >= n || ij.y >= n) throw FormatError("edge references a missing vertex");
      plan.graph.edges.push_back({ij.x, ij.y});
    }
  } else {
    std::vector<Loop> loops;
    for (const Room& r : plan.rooms) loops.push_back(r.loop);
    plan.graph = build_graph(loops);
  }
  if (j.contains("width")) plan.width = j["width"].get<int>();
  if (j.contains("height")) plan.height = j["height"].get<int>();
  return plan;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

Floorplan floorplan_from_plan(const GroundTruthPlan& plan) {
  Floorplan out;
  std::vector<Loop> loops;
  for (const Room& r : plan.rooms) loops.push_back(r.loop);
  MergeResult merged = merge(loops);
  for (std::size_t i = 0; i < plan.rooms.size(); ++i) out.rooms.push_back({plan.rooms[i].id, merged.loops[i]});
  out.graph = std::move(merged.graph);
  out.width = plan.width;
  out.height = plan.height;
  return out;
}

std::string floorplan_to_json(const Floorplan& plan) {
  json j = to_json(plan);
  if (plan.width > 0) {
    j["width"] = plan.width;
    j["height"] = plan.height;
  }
  return j.dump(1) + "\n";
}

Floorplan floorplan_from_json(const std::string& text) {
  try {
    return from_json(parse(text));
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed floorplan: ") + e.what());
  }
}

void save_floorplan(const Floorplan& plan, const std::filesystem::path& path) {
  write_text_file(path, floorplan_to_json(plan));
}

Floorplan load_floorplan(const std::filesystem::path& path) { return floorplan_from_json(read_text_file(path)); }

void save_plan(const GroundTruthPlan& plan, const std::filesystem::path& path) {
  json j = to_json(floorplan_from_plan(plan));
  j["width"] = plan.width;
  j["height"] = plan.height;
  j["frames"] = plan.frames;
  write_text_file(path, j.dump(1) + "\n");
}

GroundTruthPlan load_plan(const std::filesystem::path& path) {
  try {
    const json j = parse(read_text_file(path));
    const Floorplan f = from_json(j);
    GroundTruthPlan plan;
    plan.width = j.value("width", 256);
    plan.height = j.value("height", 256);
    plan.rooms = f.rooms;
    if (j.contains("frames")) plan.frames = j["frames"].get<std::vector<int>>();
    plan.frames.resize(plan.rooms.size(), 0);
    return plan;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed plan: ") + e.what());
  }
}

namespace {

std::filesystem::path segment_path(const std::filesystem::path& dir, std::size_t i) {
  char name[32];
  std::snprintf(name, sizeof name, "segment_%02zu.msk", i);
  return dir / name;
}

}  // namespace

void save_bundle(const LikelihoodBundle& bundle, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  save_grid(bundle.corner, dir / "corner.grd");
  save_grid(bundle.edge, dir / "edge.grd");
  save_grids(bundle.direction, dir / "direction.grd");
  for (std::size_t i = 0; i < bundle.segments.size(); ++i) save_mask(bundle.segments[i], segment_path(dir, i));
}

LikelihoodBundle load_bundle(const std::filesystem::path& dir) {
  LikelihoodBundle b;
  b.corner = load_grid(dir / "corner.grd");
  b.edge = load_grid(dir / "edge.grd");
  b.direction = load_grids(dir / "direction.grd");
  if (!b.edge.same_shape(b.corner)) throw FormatError("edge map size differs from corner map");
  if (b.direction.size() != static_cast<std::size_t>(kDirectionBins))
    throw FormatError("direction map must have 36 channels");
  if (!b.direction[0].same_shape(b.corner)) throw FormatError("direction map size differs from corner map");
  for (std::size_t i = 0; std::filesystem::exists(segment_path(dir, i)); ++i) {
    b.segments.push_back(load_mask(segment_path(dir, i)));
    if (!b.segments.back().same_shape(b.corner)) throw FormatError("segment size differs from corner map");
  }
  if (b.segments.empty()) throw FormatError("no segment_NN.msk files in " + dir.string());
  return b;
}

}  // namespace floorsp
