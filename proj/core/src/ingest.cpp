#include "floorsp/ingest.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "floorsp/errors.hpp"

namespace floorsp {

namespace {

int bin_coordinate(double v, double lo, double extent, int resolution) {
  if (extent <= 0.0) return resolution / 2;
  const int b = static_cast<int>(std::floor((v - lo) / extent * resolution));
  return std::clamp(b, 0, resolution - 1);
}

std::uint32_t to_little_endian(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    return ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) | (v >> 24);
  }
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

// Reads "<MAGIC> n1 n2 ...\n" and returns the integers.
std::vector<long long> read_header(std::istream& in, const std::string& magic, std::size_t count,
                                   const std::filesystem::path& path) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path.string() + ": missing header");
  std::istringstream ss(line);
  std::string tag;
  ss >> tag;
  if (tag != magic) throw FormatError(path.string() + ": bad magic '" + tag + "'");
  std::vector<long long> out(count);
  for (auto& v : out) {
    if (!(ss >> v) || v <= 0 || v > (1 << 16)) throw FormatError(path.string() + ": bad dimensions");
  }
  std::string extra;
  if (ss >> extra) throw FormatError(path.string() + ": trailing header fields");
  return out;
}

}  // namespace

DensityNormalMap project_point_cloud(const std::vector<PointSample>& points, int resolution) {
  if (points.empty()) throw EmptyCloud();
  if (resolution < 16) throw std::invalid_argument("resolution must be at least 16");

  double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
  double min_y = min_x, max_y = -min_x;
  for (const auto& p : points) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double pad_x = 0.025 * (max_x - min_x);
  const double pad_y = 0.025 * (max_y - min_y);
  const double lo_x = min_x - pad_x;
  const double lo_y = min_y - pad_y;
  const double extent_x = (max_x - min_x) + 2.0 * pad_x;
  const double extent_y = (max_y - min_y) + 2.0 * pad_y;

  std::vector<std::uint32_t> counts(static_cast<std::size_t>(resolution) * resolution, 0);
  std::vector<double> sum_x(counts.size(), 0.0), sum_y(counts.size(), 0.0), sum_z(counts.size(), 0.0);
  for (const auto& p : points) {
    const int col = bin_coordinate(p.x, lo_x, extent_x, resolution);
    const int row = bin_coordinate(p.y, lo_y, extent_y, resolution);
    const std::size_t i = static_cast<std::size_t>(row) * resolution + col;
    ++counts[i];
    sum_x[i] += p.nx;
    sum_y[i] += p.ny;
    sum_z[i] += p.nz;
  }

  const std::uint32_t peak = *std::max_element(counts.begin(), counts.end());
  DensityNormalMap map{Grid2D(resolution, resolution), Grid2D(resolution, resolution),
                       Grid2D(resolution, resolution), Grid2D(resolution, resolution)};
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    map.density.values()[i] =
        counts[i] == peak ? 1.0f : static_cast<float>(static_cast<double>(counts[i]) / peak);
    const double n = std::sqrt(sum_x[i] * sum_x[i] + sum_y[i] * sum_y[i] + sum_z[i] * sum_z[i]);
    if (n <= 1e-12) continue;
    map.normal_x.values()[i] = static_cast<float>(sum_x[i] / n);
    map.normal_y.values()[i] = static_cast<float>(sum_y[i] / n);
    map.normal_z.values()[i] = static_cast<float>(sum_z[i] / n);
  }
  return map;
}

std::vector<PointSample> parse_point_cloud(std::istream& in) {
  std::vector<PointSample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    PointSample p;
    std::string extra;
    if (!(ss >> p.x >> p.y >> p.z >> p.nx >> p.ny >> p.nz) || (ss >> extra)) {
      throw FormatError("point cloud line " + std::to_string(line_no) + ": expected 6 numbers");
    }
    const double n = std::sqrt(p.nx * p.nx + p.ny * p.ny + p.nz * p.nz);
    if (std::abs(n - 1.0) > 1e-3) {
      throw FormatError("point cloud line " + std::to_string(line_no) + ": normal is not unit length");
    }
    out.push_back(p);
  }
  return out;
}

std::vector<PointSample> load_point_cloud(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_point_cloud(in);
}

void save_grids(const std::vector<Grid2D>& channels, const std::filesystem::path& path) {
  if (channels.empty()) throw std::invalid_argument("save_grids: no channels");
  const int w = channels.front().width();
  const int h = channels.front().height();
  for (const auto& c : channels) {
    if (!c.same_shape(w, h)) throw std::invalid_argument("save_grids: channel shapes differ");
  }
  auto out = open_out(path);
  out << "GRD " << w << ' ' << h << ' ' << channels.size() << '\n';
  std::vector<char> buffer(static_cast<std::size_t>(w) * h * channels.size() * 4);
  std::size_t k = 0;
  for (std::size_t i = 0; i < channels.front().size(); ++i) {
    for (const auto& c : channels) {
      const std::uint32_t bits = to_little_endian(std::bit_cast<std::uint32_t>(c.values()[i]));
      std::memcpy(buffer.data() + k, &bits, 4);
      k += 4;
    }
  }
  out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<Grid2D> load_grids(const std::filesystem::path& path) {
  auto in = open_in(path);
  const auto dims = read_header(in, "GRD", 3, path);
  const int w = static_cast<int>(dims[0]);
  const int h = static_cast<int>(dims[1]);
  const auto c = static_cast<std::size_t>(dims[2]);
  std::vector<char> buffer(static_cast<std::size_t>(w) * h * c * 4);
  in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  if (in.gcount() != static_cast<std::streamsize>(buffer.size())) {
    throw FormatError(path.string() + ": truncated grid data");
  }
  if (in.peek() != std::char_traits<char>::eof()) throw FormatError(path.string() + ": trailing bytes");

  std::vector<Grid2D> channels(c, Grid2D(w, h));
  std::size_t k = 0;
  for (std::size_t i = 0; i < channels.front().size(); ++i) {
    for (auto& ch : channels) {
      std::uint32_t bits;
      std::memcpy(&bits, buffer.data() + k, 4);
      ch.values()[i] = std::bit_cast<float>(to_little_endian(bits));
      k += 4;
    }
  }
  return channels;
}

void save_grid(const Grid2D& grid, const std::filesystem::path& path) { save_grids({grid}, path); }

Grid2D load_grid(const std::filesystem::path& path) {
  auto channels = load_grids(path);
  if (channels.size() != 1) {
    throw FormatError(path.string() + ": expected 1 channel, found " + std::to_string(channels.size()));
  }
  return std::move(channels.front());
}

void save_mask(const BinaryMask& mask, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "MSK " << mask.width() << ' ' << mask.height() << '\n';
  std::vector<char> bytes(mask.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = mask.values()[i] ? 1 : 0;
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

BinaryMask load_mask(const std::filesystem::path& path) {
  auto in = open_in(path);
  const auto dims = read_header(in, "MSK", 2, path);
  BinaryMask mask(static_cast<int>(dims[0]), static_cast<int>(dims[1]));
  std::vector<char> bytes(mask.size());
  in.read(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
    throw FormatError(path.string() + ": truncated mask data");
  }
  if (in.peek() != std::char_traits<char>::eof()) throw FormatError(path.string() + ": trailing bytes");
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (bytes[i] != 0 && bytes[i] != 1) throw FormatError(path.string() + ": mask bytes must be 0 or 1");
    mask.values()[i] = static_cast<std::uint8_t>(bytes[i]);
  }
  return mask;
}

void save_density_normal_map(const DensityNormalMap& map, const std::filesystem::path& path) {
  save_grids({map.density, map.normal_x, map.normal_y, map.normal_z}, path);
}

}  // namespace floorsp
