#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gridnav/common.hpp"

namespace gridnav {

struct CloudPoint {
  double x = 0, y = 0, z = 0;
  std::uint8_t r = 128, g = 128, b = 128;
};

struct PointCloud {
  std::vector<CloudPoint> points;
  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

// ASCII "x y z [r g b]" per line. Header-tolerant: a leading PLY-style
// header block (ply/format/comment/element/property/end_header) is
// skipped, as are blank lines.
inline PointCloud read_point_cloud(std::istream& in) {
  PointCloud cloud;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "ply" || first == "format" || first == "comment" || first == "element" ||
        first == "property" || first == "end_header" || first == "obj_info")
      continue;
    CloudPoint p;
    try {
      p.x = std::stod(first);
    } catch (const std::exception&) {
      fail(Err::BadPointCloud, "line " + std::to_string(lineno) + ": expected a coordinate, got '" + first + "'");
    }
    if (!(ls >> p.y >> p.z))
      fail(Err::BadPointCloud, "line " + std::to_string(lineno) + ": expected x y z");
    double r, g, b;
    if (ls >> r) {
      if (!(ls >> g >> b))
        fail(Err::BadPointCloud, "line " + std::to_string(lineno) + ": expected r g b");
      p.r = std::uint8_t(r);
      p.g = std::uint8_t(g);
      p.b = std::uint8_t(b);
    }
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
      fail(Err::NonFinitePoint,
           "non-finite point at index " + std::to_string(cloud.points.size()) + " (line " +
               std::to_string(lineno) + ")");
    cloud.points.push_back(p);
  }
  return cloud;
}

inline PointCloud read_point_cloud(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::BadPointCloud, "cannot open point cloud: " + path);
  return read_point_cloud(in);
}

inline void write_point_cloud(const PointCloud& cloud, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Err::UnwritablePath, "cannot write point cloud: " + path);
  out << "ply\nformat ascii 1.0\nelement vertex " << cloud.points.size()
      << "\nproperty float x\nproperty float y\nproperty float z\n"
         "property uchar red\nproperty uchar green\nproperty uchar blue\nend_header\n";
  char buf[160];
  for (const auto& p : cloud.points) {
    std::snprintf(buf, sizeof buf, "%.9g %.9g %.9g %d %d %d\n", p.x, p.y, p.z, p.r, p.g, p.b);
    out << buf;
  }
}

}  // namespace gridnav
