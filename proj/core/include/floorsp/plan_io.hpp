#ifndef FLOORSP_PLAN_IO_HPP
#define FLOORSP_PLAN_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "floorsp/likelihood.hpp"
#include "floorsp/merge.hpp"
#include "floorsp/oracle.hpp"

namespace floorsp {

/// Rooms plus their merged graph; the exchange format of reconstruct, eval
/// and render.
struct Floorplan {
  std::vector<Room> rooms;
  FloorplanGraph graph;  // edge_rooms may be empty when read from disk
  int width = 0;         // raster size, 0 when unknown
  int height = 0;
};

/// Floorplan of a synthetic plan: its loops and their merged graph.
Floorplan floorplan_from_plan(const GroundTruthPlan& plan);

std::string floorplan_to_json(const Floorplan& plan);
Floorplan floorplan_from_json(const std::string& text);
void save_floorplan(const Floorplan& plan, const std::filesystem::path& path);
Floorplan load_floorplan(const std::filesystem::path& path);

/// plan.json: the floorplan schema plus "width", "height" and "frames".
void save_plan(const GroundTruthPlan& plan, const std::filesystem::path& path);
GroundTruthPlan load_plan(const std::filesystem::path& path);

/// corner.grd, edge.grd, direction.grd and segment_NN.msk in `dir`.
void save_bundle(const LikelihoodBundle& bundle, const std::filesystem::path& dir);
LikelihoodBundle load_bundle(const std::filesystem::path& dir);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace floorsp

#endif  // FLOORSP_PLAN_IO_HPP
