#ifndef FLOORSP_INGEST_HPP
#define FLOORSP_INGEST_HPP

#include <filesystem>
#include <istream>
#include <vector>

#include "floorsp/grid.hpp"

namespace floorsp {

/// One 3D point with its unit surface normal (metres, z is up).
struct PointSample {
  double x = 0, y = 0, z = 0;
  double nx = 0, ny = 0, nz = 1;
};

/// Top-down 4-channel map: point density plus the mean normal per pixel.
struct DensityNormalMap {
  Grid2D density;
  Grid2D normal_x;
  Grid2D normal_y;
  Grid2D normal_z;
};

/// Projects points onto the XY plane.
///
/// The tight XY rectangle is grown by 2.5% of its extent on every side and
/// scaled (independently per axis) onto a resolution x resolution grid.
/// Column follows x and row follows y. Points on the far edge fall into the
/// last pixel; an axis with zero extent maps to the centre pixel. Density is
/// the per-pixel count divided by the largest count. Normals are averaged in
/// input order and renormalised; pixels whose normals cancel stay zero.
///
/// Throws EmptyCloud for an empty input, std::invalid_argument when
/// resolution < 16.
DensityNormalMap project_point_cloud(const std::vector<PointSample>& points, int resolution = 256);

/// Parses `x y z nx ny nz` lines; blank lines and `#` comments are skipped.
/// Throws FormatError on malformed lines or normals off unit length by more
/// than 1e-3.
std::vector<PointSample> parse_point_cloud(std::istream& in);
std::vector<PointSample> load_point_cloud(const std::filesystem::path& path);

// Grid files: "GRD <width> <height> <channels>\n" then row-major,
// channel-interleaved little-endian float32.
void save_grids(const std::vector<Grid2D>& channels, const std::filesystem::path& path);
std::vector<Grid2D> load_grids(const std::filesystem::path& path);
void save_grid(const Grid2D& grid, const std::filesystem::path& path);
/// Throws FormatError unless the file holds exactly one channel.
Grid2D load_grid(const std::filesystem::path& path);

// Mask files: "MSK <width> <height>\n" then row-major bytes 0/1.
void save_mask(const BinaryMask& mask, const std::filesystem::path& path);
BinaryMask load_mask(const std::filesystem::path& path);

void save_density_normal_map(const DensityNormalMap& map, const std::filesystem::path& path);

}  // namespace floorsp

#endif  // FLOORSP_INGEST_HPP
