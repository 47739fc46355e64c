#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gridnav/common.hpp"

namespace gridnav {

using Color = std::array<float, 3>;

// Procedural wall texture: color as a function of the wall-surface
// coordinates (t along the wall in meters, z height in meters).
struct Texture {
  enum class Kind { Solid, Stripe, Checker } kind = Kind::Solid;
  Color c1{0.8f, 0.8f, 0.8f};
  Color c2{0.2f, 0.2f, 0.2f};
  double period = 0.25;
};

inline Color sample_texture(const Texture& tex, double t, double z) {
  switch (tex.kind) {
    case Texture::Kind::Solid: return tex.c1;
    case Texture::Kind::Stripe: {
      long long k = (long long)std::floor(t / tex.period);
      return (k & 1) ? tex.c2 : tex.c1;
    }
    case Texture::Kind::Checker: {
      long long k = (long long)std::floor(t / tex.period) + (long long)std::floor(z / tex.period);
      return (k & 1) ? tex.c2 : tex.c1;
    }
  }
  return tex.c1;
}

struct WallSegment {
  Vec2 a, b;
  int texture = 0;
};

// Square floor patch (one grid cell), sampled by synthesize_point_cloud
// and giving free space its extent.
struct FloorPatch {
  Vec2 corner;  // NW corner
  double size = 0.5;
};

// 2.5D scene: constant-height textured wall segments over a flat floor.
// The outer boundary is watertight; no ray from free space escapes.
struct SceneGeometry {
  std::vector<WallSegment> walls;
  std::vector<FloorPatch> floor_patches;
  std::vector<Texture> palette;
  Color floor_color{0.35f, 0.3f, 0.25f};
  Color ceiling_color{0.9f, 0.9f, 0.88f};
  double wall_height = 2.0;
  Vec2 bbox_min, bbox_max;
};

struct ProcGenSpec {
  int rows = 6, cols = 8;
  double cell_size = 0.5;
  double obstacle_density = 0.12;  // must stay < 0.5
  int palette_size = 8;
  std::uint64_t seed = 1;
  std::string category = "office";
};

// Category presets; desk-scale stand-ins for the five scene categories.
inline ProcGenSpec preset_spec(const std::string& category, std::uint64_t seed) {
  ProcGenSpec s;
  s.seed = seed;
  s.category = category;
  if (category == "office") {
    s.rows = 6; s.cols = 8; s.obstacle_density = 0.12;
  } else if (category == "conference") {
    s.rows = 8; s.cols = 10; s.obstacle_density = 0.10;
  } else if (category == "open") {
    s.rows = 10; s.cols = 12; s.obstacle_density = 0.05;
  } else if (category == "kitchen") {
    s.rows = 9; s.cols = 11; s.obstacle_density = 0.15;
  } else if (category == "storage") {
    s.rows = 5; s.cols = 7; s.cell_size = 0.4; s.obstacle_density = 0.20;
  } else {
    fail(Err::BadSpec, "unknown category preset: " + category);
  }
  return s;
}

// Generated room: geometry plus the ground-truth free-cell mask. Cell
// (r,c) spans x in [c*s,(c+1)*s], y in [-(r+1)*s,-r*s]; the NW corner of
// the room is the world origin.
struct ProcGenScene {
  SceneGeometry geom;
  int rows = 0, cols = 0;
  double cell_size = 0.5;
  std::vector<std::uint8_t> free;  // rows*cols mask

  bool free_at(int r, int c) const {
    return r >= 0 && r < rows && c >= 0 && c < cols && free[std::size_t(r) * cols + c];
  }
  Vec2 cell_center(int r, int c) const {
    return {(c + 0.5) * cell_size, -(r + 0.5) * cell_size};
  }
  int free_count() const { return int(std::count(free.begin(), free.end(), std::uint8_t(1))); }
};

namespace detail {

inline Color hsv_color(double h, double s, double v) {
  double c = v * s;
  double hp = h * 6.0;
  double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (int(hp) % 6) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  double m = v - c;
  return {float(r + m), float(g + m), float(b + m)};
}

inline std::vector<Texture> make_palette(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Texture> pal;
  // Texture 0 is the deliberately blank (feature-less) wall finish.
  Texture blank;
  blank.kind = Texture::Kind::Solid;
  blank.c1 = {0.72f, 0.7f, 0.66f};
  pal.push_back(blank);
  static const double periods[] = {0.25, 0.2, 0.15, 0.125};
  for (int i = 1; i < n; ++i) {
    Texture t;
    double roll = u(rng);
    t.kind = roll < 0.30 ? Texture::Kind::Solid : roll < 0.62 ? Texture::Kind::Stripe : Texture::Kind::Checker;
    t.c1 = hsv_color(u(rng), 0.35 + 0.55 * u(rng), 0.55 + 0.4 * u(rng));
    t.c2 = hsv_color(u(rng), 0.35 + 0.55 * u(rng), 0.15 + 0.35 * u(rng));
    t.period = periods[rng() % 4];
    pal.push_back(t);
  }
  return pal;
}

inline bool mask_connected(const std::vector<std::uint8_t>& free, int rows, int cols) {
  int start = -1;
  for (int i = 0; i < rows * cols; ++i)
    if (free[std::size_t(i)]) {
      start = i;
      break;
    }
  if (start < 0) return false;
  std::vector<std::uint8_t> seen(free.size(), 0);
  std::vector<int> stack{start};
  seen[std::size_t(start)] = 1;
  int reached = 0;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    ++reached;
    int r = i / cols, c = i % cols;
    const int nb[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
    for (auto& [nr, nc] : nb) {
      if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
      int j = nr * cols + nc;
      if (free[std::size_t(j)] && !seen[std::size_t(j)]) {
        seen[std::size_t(j)] = 1;
        stack.push_back(j);
      }
    }
  }
  return reached == int(std::count(free.begin(), free.end(), std::uint8_t(1)));
}

// A maximal straight run of same-line wall faces, pre texture split.
struct FaceRun {
  bool horizontal = false;
  int line = 0;        // grid line index
  int lo = 0, hi = 0;  // inclusive face range along the line
  bool boundary = false;
};

}  // namespace detail

// Generates the room layout. Deterministic in the seed: occupancy is
// re-rolled with derived seeds until the free cells are 4-connected
// (bounded retries), walls are split into short texture runs, and one
// boundary run is forced to the blank texture so every scene has a
// feature-less wall region.
inline ProcGenScene generate_geometry(const ProcGenSpec& spec) {
  if (spec.rows < 2 || spec.cols < 2) fail(Err::BadSpec, "room needs at least 2x2 cells");
  if (spec.obstacle_density < 0 || spec.obstacle_density >= 0.5)
    fail(Err::BadSpec, "obstacle_density must be in [0, 0.5)");
  if (spec.cell_size <= 0) fail(Err::BadSpec, "cell_size must be > 0");

  ProcGenScene out;
  out.rows = spec.rows;
  out.cols = spec.cols;
  out.cell_size = spec.cell_size;

  const int n = spec.rows * spec.cols;
  bool connected = false;
  for (int attempt = 0; attempt < 64 && !connected; ++attempt) {
    auto rng = make_rng(spec.seed, 7919 * std::uint64_t(attempt));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    out.free.assign(std::size_t(n), 1);
    for (int i = 0; i < n; ++i)
      if (u(rng) < spec.obstacle_density) out.free[std::size_t(i)] = 0;
    if (out.free_count() >= 2 && detail::mask_connected(out.free, spec.rows, spec.cols))
      connected = true;
  }
  if (!connected) fail(Err::BadSpec, "could not generate a connected layout within the retry budget");

  auto rng = make_rng(spec.seed, 104729);
  out.geom.palette = detail::make_palette(spec.palette_size, rng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  out.geom.floor_color = detail::hsv_color(u(rng), 0.1 + 0.2 * u(rng), 0.25 + 0.2 * u(rng));
  out.geom.ceiling_color = detail::hsv_color(u(rng), 0.05 + 0.1 * u(rng), 0.8 + 0.15 * u(rng));

  const double s = spec.cell_size;
  auto blocked = [&](int r, int c) { return !out.free_at(r, c); };

  // Wall faces sit on grid lines wherever free space meets a blocked
  // cell or the outside. Horizontal faces on line r face cell (r,c)
  // below vs (r-1,c) above; vertical faces on line c face (r,c-1) west
  // vs (r,c) east. A face is emitted iff exactly one side is free.
  std::vector<detail::FaceRun> runs;
  auto collect_runs = [&](bool horizontal) {
    int lines = horizontal ? spec.rows + 1 : spec.cols + 1;
    int span = horizontal ? spec.cols : spec.rows;
    for (int line = 0; line < lines; ++line) {
      int start = -1;
      for (int k = 0; k <= span; ++k) {
        bool face = false;
        if (k < span) {
          bool side_a, side_b;
          if (horizontal) {
            side_a = !blocked(line, k);       // south of the line
            side_b = !blocked(line - 1, k);   // north of the line
          } else {
            side_a = !blocked(k, line - 1);   // west of the line
            side_b = !blocked(k, line);       // east of the line
          }
          face = side_a != side_b;
        }
        if (face && start < 0) start = k;
        if (!face && start >= 0) {
          bool bnd = horizontal ? (line == 0 || line == spec.rows) : (line == 0 || line == spec.cols);
          runs.push_back({horizontal, line, start, k - 1, bnd});
          start = -1;
        }
      }
    }
  };
  collect_runs(true);
  collect_runs(false);

  // Split each maximal run into 2..4-cell texture runs.
  struct TexRun {
    detail::FaceRun faces;
    int texture;
  };
  std::vector<TexRun> tex_runs;
  for (const auto& run : runs) {
    int k = run.lo;
    while (k <= run.hi) {
      int len = 2 + int(rng() % 3);
      int hi = std::min(run.hi, k + len - 1);
      int tex = 1 + int(rng() % std::uint64_t(spec.palette_size - 1));
      tex_runs.push_back({{run.horizontal, run.line, k, hi, run.boundary}, tex});
      k = hi + 1;
    }
  }

  // Blank out the longest boundary run (feature-less target region). If
  // splitting left only short pieces, widen to a whole maximal run.
  int best = -1, best_len = 0;
  for (std::size_t i = 0; i < tex_runs.size(); ++i) {
    const auto& tr = tex_runs[i];
    int len = tr.faces.hi - tr.faces.lo + 1;
    if (tr.faces.boundary && len > best_len) {
      best = int(i);
      best_len = len;
    }
  }
  if (best >= 0 && best_len < 3) {
    for (const auto& run : runs) {
      int len = run.hi - run.lo + 1;
      if (run.boundary && len > best_len) {
        best_len = len;
        std::erase_if(tex_runs, [&](const TexRun& tr) {
          return tr.faces.horizontal == run.horizontal && tr.faces.line == run.line &&
                 tr.faces.lo >= run.lo && tr.faces.hi <= run.hi;
        });
        tex_runs.push_back({run, 0});
        best = int(tex_runs.size()) - 1;
      }
    }
  }
  if (best >= 0) tex_runs[std::size_t(best)].texture = 0;

  for (const auto& tr : tex_runs) {
    WallSegment seg;
    seg.texture = tr.texture;
    if (tr.faces.horizontal) {
      double y = -tr.faces.line * s;
      seg.a = {tr.faces.lo * s, y};
      seg.b = {(tr.faces.hi + 1) * s, y};
    } else {
      double x = tr.faces.line * s;
      seg.a = {x, -tr.faces.lo * s};
      seg.b = {x, -(tr.faces.hi + 1) * s};
    }
    out.geom.walls.push_back(seg);
  }

  for (int r = 0; r < spec.rows; ++r)
    for (int c = 0; c < spec.cols; ++c)
      if (out.free_at(r, c)) out.geom.floor_patches.push_back({{c * s, -r * s}, s});

  out.geom.bbox_min = {0.0, -spec.rows * s};
  out.geom.bbox_max = {spec.cols * s, 0.0};
  return out;
}

}  // namespace gridnav
