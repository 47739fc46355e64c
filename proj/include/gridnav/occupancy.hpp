#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "gridnav/common.hpp"
#include "gridnav/image.hpp"
#include "gridnav/pointcloud.hpp"

namespace gridnav {

enum class Cell : std::uint8_t { Unknown = 0, Free = 1, Occupied = 2 };

// 2D occupancy raster. `origin` is the north-west corner: row 0 is the
// northern edge (rows grow southward, -y), column 0 the western edge
// (cols grow eastward, +x).
struct OccupancyGrid {
  Vec2 origin;           // world position of the NW corner
  double resolution = 0.05;  // meters per cell
  int rows = 0, cols = 0;
  std::vector<Cell> cells;

  Cell at(int r, int c) const { return cells[std::size_t(r) * cols + c]; }
  Cell& at(int r, int c) { return cells[std::size_t(r) * cols + c]; }
  bool in_bounds(int r, int c) const { return r >= 0 && r < rows && c >= 0 && c < cols; }

  int col_of(double x) const { return int(std::floor((x - origin.x) / resolution)); }
  int row_of(double y) const { return int(std::floor((origin.y - y) / resolution)); }
  Vec2 cell_center(int r, int c) const {
    return {origin.x + (c + 0.5) * resolution, origin.y - (r + 0.5) * resolution};
  }

  std::size_t count(Cell kind) const {
    return std::size_t(std::count(cells.begin(), cells.end(), kind));
  }
};

struct HeightBand {
  double z_min = 0.0;
  double z_max = 0.0;
};

// Obstacle map from a point cloud. A cell is occupied iff at least
// `min_points` points with z inside the band project into it; a cell no
// point projects into at any height is unknown; the rest are free. An
// empty cloud yields a single unknown cell.
inline OccupancyGrid build_obstacle_map(const PointCloud& cloud, HeightBand band, double resolution,
                                        int min_points = 3) {
  if (resolution <= 0) fail(Err::BadArgument, "resolution must be > 0");
  if (min_points < 1) fail(Err::BadArgument, "min_points must be >= 1");
  if (!(band.z_min < band.z_max)) fail(Err::EmptyBand, "empty height band");

  OccupancyGrid grid;
  grid.resolution = resolution;
  if (cloud.empty()) {
    grid.rows = grid.cols = 1;
    grid.cells.assign(1, Cell::Unknown);
    return grid;
  }

  double min_x = cloud.points[0].x, max_x = min_x;
  double min_y = cloud.points[0].y, max_y = min_y;
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    const auto& p = cloud.points[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
      fail(Err::NonFinitePoint, "non-finite point at index " + std::to_string(i));
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  grid.origin = {std::floor(min_x / resolution) * resolution,
                 std::ceil(max_y / resolution) * resolution};
  grid.cols = int(std::floor((max_x - grid.origin.x) / resolution)) + 1;
  grid.rows = int(std::floor((grid.origin.y - min_y) / resolution)) + 1;
  grid.cells.assign(std::size_t(grid.rows) * grid.cols, Cell::Unknown);

  std::vector<std::int32_t> in_band(grid.cells.size(), 0);
  std::vector<std::uint8_t> any(grid.cells.size(), 0);
  for (const auto& p : cloud.points) {
    int c = grid.col_of(p.x);
    int r = grid.row_of(p.y);
    // Points exactly on the south/east boundary land one past the end.
    c = std::min(c, grid.cols - 1);
    r = std::min(r, grid.rows - 1);
    std::size_t ix = std::size_t(r) * grid.cols + c;
    any[ix] = 1;
    if (p.z >= band.z_min && p.z <= band.z_max) ++in_band[ix];
  }
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    if (in_band[i] >= min_points)
      grid.cells[i] = Cell::Occupied;
    else if (any[i])
      grid.cells[i] = Cell::Free;
  }
  return grid;
}

// Laser-scan analogue: occupancy summarized in a thin slab centred at
// the sensor height.
inline OccupancyGrid build_laserscan_map(const PointCloud& cloud, double sensor_height,
                                         double slab_thickness, double resolution,
                                         int min_points = 3) {
  if (slab_thickness <= 0) fail(Err::BadArgument, "slab_thickness must be > 0");
  return build_obstacle_map(cloud,
                            {sensor_height - slab_thickness / 2, sensor_height + slab_thickness / 2},
                            resolution, min_points);
}

// Visualization: one pixel block per cell. Occupied black, free white,
// unknown gray; overlay locations drawn as red blocks.
inline Image rasterize_map_image(const OccupancyGrid& grid,
                                 const std::vector<std::pair<int, int>>& overlay_cells = {},
                                 int block = 4) {
  Image im(grid.cols * block, grid.rows * block);
  for (int r = 0; r < grid.rows; ++r)
    for (int c = 0; c < grid.cols; ++c) {
      std::uint8_t v = grid.at(r, c) == Cell::Occupied ? 0 : grid.at(r, c) == Cell::Free ? 255 : 128;
      for (int dy = 0; dy < block; ++dy)
        for (int dx = 0; dx < block; ++dx) im.set(r * block + dy, c * block + dx, v, v, v);
    }
  for (const auto& [r, c] : overlay_cells) {
    if (!grid.in_bounds(r, c)) continue;
    for (int dy = 1; dy + 1 < block; ++dy)
      for (int dx = 1; dx + 1 < block; ++dx) im.set(r * block + dy, c * block + dx, 220, 30, 30);
  }
  return im;
}

// Map export: portable graymap (P5) plus a structured-text sidecar with
// origin and resolution.
inline void write_map_pgm(const OccupancyGrid& grid, const std::string& path_base) {
  std::ofstream out(path_base + ".pgm", std::ios::binary);
  if (!out) fail(Err::UnwritablePath, "cannot write map: " + path_base + ".pgm");
  out << "P5\n" << grid.cols << " " << grid.rows << "\n255\n";
  for (Cell c : grid.cells) {
    std::uint8_t v = c == Cell::Occupied ? 0 : c == Cell::Free ? 255 : 128;
    out.write(reinterpret_cast<const char*>(&v), 1);
  }
  out.close();
  std::ofstream side(path_base + ".txt");
  if (!side) fail(Err::UnwritablePath, "cannot write map sidecar: " + path_base + ".txt");
  char buf[160];
  std::snprintf(buf, sizeof buf, "origin_x %.17g\norigin_y %.17g\nresolution %.17g\nrows %d\ncols %d\n",
                grid.origin.x, grid.origin.y, grid.resolution, grid.rows, grid.cols);
  side << buf;
}

}  // namespace gridnav
