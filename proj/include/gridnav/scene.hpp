#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gridnav/common.hpp"
#include "gridnav/image.hpp"

namespace gridnav {

// Compass heading. Azimuth 0 deg = North = -row direction; row grows
// southward, column grows eastward.
enum class Heading : int { N = 0, E = 1, S = 2, W = 3 };

inline Heading turn_left(Heading h) { return Heading((int(h) + 3) % 4); }
inline Heading turn_right(Heading h) { return Heading((int(h) + 1) % 4); }
inline int heading_drow(Heading h) { return h == Heading::N ? -1 : h == Heading::S ? 1 : 0; }
inline int heading_dcol(Heading h) { return h == Heading::E ? 1 : h == Heading::W ? -1 : 0; }
inline double heading_azimuth_deg(Heading h) { return 90.0 * int(h); }

inline char heading_char(Heading h) { return "NESW"[int(h)]; }
inline std::optional<Heading> parse_heading(char c) {
  switch (c) {
    case 'N': return Heading::N;
    case 'E': return Heading::E;
    case 'S': return Heading::S;
    case 'W': return Heading::W;
    default: return std::nullopt;
  }
}

// The four-action move/turn alphabet. MoveForward<->MoveBackward and
// TurnLeft<->TurnRight are mutual inverses.
enum class Action : int { MoveForward = 0, MoveBackward = 1, TurnLeft = 2, TurnRight = 3 };
inline constexpr int kNumActions = 4;

inline Action inverse(Action a) {
  switch (a) {
    case Action::MoveForward: return Action::MoveBackward;
    case Action::MoveBackward: return Action::MoveForward;
    case Action::TurnLeft: return Action::TurnRight;
    case Action::TurnRight: return Action::TurnLeft;
  }
  fail(Err::BadArgument, "bad action");
}

inline const char* action_name(Action a) {
  static const char* names[] = {"MoveForward", "MoveBackward", "TurnLeft", "TurnRight"};
  return names[int(a)];
}

struct AgentState {
  int location_id = 0;
  Heading heading = Heading::N;
  bool operator==(const AgentState& o) const = default;
};

// A target is a camera pose: location AND heading must both match.
struct TargetRef {
  int location_id = 0;
  Heading heading = Heading::N;
  bool operator==(const TargetRef& o) const = default;
  AgentState state() const { return {location_id, heading}; }
};

struct LocationRecord {
  int id = 0;
  int row = 0;
  int col = 0;
};

// In-memory scene: grid lattice of locations with one equirectangular
// panorama per location. Immutable after load; share read-only across
// threads.
struct GridScene {
  static constexpr int kFormatVersion = 1;

  std::string scene_id;
  std::string category = "office";  // office|conference|open|kitchen|storage
  std::string split = "train";      // train|test
  int rows = 0, cols = 0;
  double cell_size = 0.5;
  int pano_width = 0, pano_height = 0;
  std::set<std::pair<int, int>> free_cells;
  std::vector<LocationRecord> locations;
  std::vector<TargetRef> landmark_targets;
  std::vector<TargetRef> featureful_targets;
  std::vector<Image> panoramas;  // indexed by location id

  const LocationRecord& location(int id) const { return locations[std::size_t(id)]; }
  int num_locations() const { return int(locations.size()); }

  // Location id at (row,col), or -1.
  int location_at(int row, int col) const {
    auto it = cell_to_loc_.find({row, col});
    return it == cell_to_loc_.end() ? -1 : it->second;
  }

  const Image& panorama(int id) const { return panoramas[std::size_t(id)]; }

  bool valid_state(const AgentState& s) const {
    return s.location_id >= 0 && s.location_id < num_locations();
  }

  void rebuild_index() {
    cell_to_loc_.clear();
    for (const auto& loc : locations) cell_to_loc_[{loc.row, loc.col}] = loc.id;
  }

  // Checks every type invariant; load_scene and save_scene both run it.
  void check_invariants() const {
    if (rows <= 0 || cols <= 0) fail(Err::InvariantViolation, scene_id + ": non-positive grid dims");
    if (cell_size <= 0) fail(Err::InvariantViolation, scene_id + ": non-positive cell size");
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < locations.size(); ++i) {
      const auto& loc = locations[i];
      if (loc.id != int(i))
        fail(Err::InvariantViolation, scene_id + ": location ids not dense 0..N-1");
      if (loc.row < 0 || loc.row >= rows || loc.col < 0 || loc.col >= cols)
        fail(Err::InvariantViolation, scene_id + ": location outside grid");
      if (!free_cells.count({loc.row, loc.col}))
        fail(Err::InvariantViolation, scene_id + ": location on non-free cell");
      if (!seen.insert({loc.row, loc.col}).second)
        fail(Err::InvariantViolation, scene_id + ": duplicate location cell");
    }
    auto check_targets = [&](const std::vector<TargetRef>& ts, const char* kind) {
      for (const auto& t : ts)
        if (t.location_id < 0 || t.location_id >= int(locations.size()))
          fail(Err::InvariantViolation, scene_id + ": " + kind + " target names missing location");
    };
    check_targets(landmark_targets, "landmark");
    check_targets(featureful_targets, "featureful");
    std::set<std::pair<int, int>> feat;
    for (const auto& t : featureful_targets) feat.insert({t.location_id, int(t.heading)});
    for (const auto& t : landmark_targets)
      if (!feat.count({t.location_id, int(t.heading)}))
        fail(Err::InvariantViolation, scene_id + ": landmark target not in featureful set");
  }

  bool equal_fields(const GridScene& o) const {
    return scene_id == o.scene_id && category == o.category && split == o.split && rows == o.rows &&
           cols == o.cols && cell_size == o.cell_size && pano_width == o.pano_width &&
           pano_height == o.pano_height && free_cells == o.free_cells &&
           locations.size() == o.locations.size() &&
           std::equal(locations.begin(), locations.end(), o.locations.begin(),
                      [](const LocationRecord& a, const LocationRecord& b) {
                        return a.id == b.id && a.row == b.row && a.col == b.col;
                      }) &&
           landmark_targets == o.landmark_targets && featureful_targets == o.featureful_targets;
  }

 private:
  std::map<std::pair<int, int>, int> cell_to_loc_;
};

struct SceneStats {
  int total_locs = 0;
  int target_locs = 0;      // distinct locations named by landmark targets
  int featureful_locs = 0;  // distinct locations named by featureful targets
};

inline SceneStats scene_stats(const GridScene& s) {
  std::set<int> t, f;
  for (const auto& x : s.landmark_targets) t.insert(x.location_id);
  for (const auto& x : s.featureful_targets) f.insert(x.location_id);
  return {s.num_locations(), int(t.size()), int(f.size())};
}

namespace detail {

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_targets(std::ostream& out, const char* key, const std::vector<TargetRef>& ts) {
  out << key << " " << ts.size() << "\n";
  for (const auto& t : ts) out << t.location_id << " " << heading_char(t.heading) << "\n";
}

}  // namespace detail

// Writes a scene package: `manifest` plus pano/<id>.png per location.
// Serialization is deterministic; saving the same scene twice produces
// byte-identical manifests.
inline void save_scene(const GridScene& scene, const std::string& package_path) {
  scene.check_invariants();
  if (scene.panoramas.size() != scene.locations.size())
    fail(Err::InvariantViolation, scene.scene_id + ": panorama count != location count");
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(fs::path(package_path) / "pano", ec);
  if (ec) fail(Err::UnwritablePath, "cannot create package dir: " + package_path);

  std::ostringstream m;
  m << "gridnav-scene-package " << GridScene::kFormatVersion << "\n";
  m << "scene_id " << scene.scene_id << "\n";
  m << "category " << scene.category << "\n";
  m << "split " << scene.split << "\n";
  m << "rows " << scene.rows << "\n";
  m << "cols " << scene.cols << "\n";
  m << "cell_size " << detail::fmt_double(scene.cell_size) << "\n";
  m << "pano_width " << scene.pano_width << "\n";
  m << "pano_height " << scene.pano_height << "\n";
  m << "free_cells " << scene.free_cells.size() << "\n";
  for (const auto& [r, c] : scene.free_cells) m << r << " " << c << "\n";
  m << "locations " << scene.locations.size() << "\n";
  for (const auto& loc : scene.locations) m << loc.id << " " << loc.row << " " << loc.col << "\n";
  detail::write_targets(m, "landmark_targets", scene.landmark_targets);
  detail::write_targets(m, "featureful_targets", scene.featureful_targets);

  std::ofstream out(fs::path(package_path) / "manifest", std::ios::binary);
  if (!out) fail(Err::UnwritablePath, "cannot write manifest in " + package_path);
  out << m.str();
  out.close();

  for (const auto& loc : scene.locations) {
    const Image& pano = scene.panoramas[std::size_t(loc.id)];
    if (pano.width != scene.pano_width || pano.height != scene.pano_height)
      fail(Err::InvariantViolation, scene.scene_id + ": panorama resolution mismatch");
    write_png(pano, (fs::path(package_path) / "pano" / (std::to_string(loc.id) + ".png")).string());
  }
}

inline GridScene load_scene(const std::string& package_path, bool load_panoramas = true) {
  namespace fs = std::filesystem;
  fs::path manifest = fs::path(package_path) / "manifest";
  std::ifstream in(manifest, std::ios::binary);
  if (!in) fail(Err::MissingManifest, "no manifest in " + package_path);

  auto next_line = [&](const char* what) {
    std::string line;
    if (!std::getline(in, line)) fail(Err::BadManifest, std::string("manifest truncated at ") + what);
    return line;
  };
  auto expect_kv = [&](const char* key) {
    std::istringstream ls(next_line(key));
    std::string k, v;
    ls >> k;
    std::getline(ls, v);
    if (k != key) fail(Err::BadManifest, "expected key '" + std::string(key) + "', got '" + k + "'");
    auto b = v.find_first_not_of(' ');
    return b == std::string::npos ? std::string() : v.substr(b);
  };
  auto to_int = [](const std::string& s, const char* what) {
    try {
      return std::stoi(s);
    } catch (const std::exception&) {
      fail(Err::BadManifest, std::string("bad integer for ") + what + ": '" + s + "'");
    }
  };

  {
    std::istringstream ls(next_line("header"));
    std::string magic;
    int version = -1;
    ls >> magic >> version;
    if (magic != "gridnav-scene-package") fail(Err::BadManifest, "bad manifest magic");
    if (version != GridScene::kFormatVersion)
      fail(Err::BadManifest, "unsupported package version " + std::to_string(version));
  }

  GridScene s;
  s.scene_id = expect_kv("scene_id");
  s.category = expect_kv("category");
  s.split = expect_kv("split");
  s.rows = to_int(expect_kv("rows"), "rows");
  s.cols = to_int(expect_kv("cols"), "cols");
  s.cell_size = std::stod(expect_kv("cell_size"));
  s.pano_width = to_int(expect_kv("pano_width"), "pano_width");
  s.pano_height = to_int(expect_kv("pano_height"), "pano_height");

  int n_free = to_int(expect_kv("free_cells"), "free_cells");
  for (int i = 0; i < n_free; ++i) {
    std::istringstream ls(next_line("free cell"));
    int r, c;
    if (!(ls >> r >> c)) fail(Err::BadManifest, "bad free cell line");
    s.free_cells.insert({r, c});
  }
  int n_locs = to_int(expect_kv("locations"), "locations");
  for (int i = 0; i < n_locs; ++i) {
    std::istringstream ls(next_line("location"));
    LocationRecord loc;
    if (!(ls >> loc.id >> loc.row >> loc.col)) fail(Err::BadManifest, "bad location line");
    s.locations.push_back(loc);
  }
  auto read_targets = [&](const char* key, std::vector<TargetRef>& out) {
    int n = to_int(expect_kv(key), key);
    for (int i = 0; i < n; ++i) {
      std::istringstream ls(next_line(key));
      int id;
      std::string h;
      if (!(ls >> id >> h) || h.size() != 1) fail(Err::BadManifest, std::string("bad target line in ") + key);
      auto hd = parse_heading(h[0]);
      if (!hd) fail(Err::BadManifest, "bad heading '" + h + "'");
      out.push_back({id, *hd});
    }
  };
  read_targets("landmark_targets", s.landmark_targets);
  read_targets("featureful_targets", s.featureful_targets);

  s.check_invariants();
  s.rebuild_index();

  if (load_panoramas) {
    s.panoramas.resize(s.locations.size());
    for (const auto& loc : s.locations) {
      fs::path p = fs::path(package_path) / "pano" / (std::to_string(loc.id) + ".png");
      if (!fs::exists(p))
        fail(Err::PanoramaMismatch, s.scene_id + ": missing panorama for location " + std::to_string(loc.id));
      Image pano = read_png(p.string());
      if (pano.width != s.pano_width || pano.height != s.pano_height)
        fail(Err::PanoramaMismatch, s.scene_id + ": panorama " + std::to_string(loc.id) +
                                        " has wrong resolution");
      s.panoramas[std::size_t(loc.id)] = std::move(pano);
    }
    // Reject stray panorama files so pano count == location count holds.
    std::size_t pano_files = 0;
    for (const auto& e : fs::directory_iterator(fs::path(package_path) / "pano"))
      if (e.path().extension() == ".png") ++pano_files;
    if (pano_files != s.locations.size())
      fail(Err::PanoramaMismatch, s.scene_id + ": panorama count != location count");
  }
  return s;
}

// Lattice adjacency induced by locations: 4-neighbours that both host
// locations.
inline std::vector<std::vector<int>> location_adjacency(const GridScene& s) {
  std::vector<std::vector<int>> adj(s.locations.size());
  for (const auto& loc : s.locations) {
    static const int dr[] = {-1, 1, 0, 0};
    static const int dc[] = {0, 0, -1, 1};
    for (int k = 0; k < 4; ++k) {
      int nb = s.location_at(loc.row + dr[k], loc.col + dc[k]);
      if (nb >= 0) adj[std::size_t(loc.id)].push_back(nb);
    }
  }
  return adj;
}

}  // namespace gridnav
