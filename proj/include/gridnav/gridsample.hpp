#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "gridnav/common.hpp"
#include "gridnav/occupancy.hpp"

namespace gridnav {

// A navigable lattice node found by grid sampling. Lattice (row,col)
// are normalized so the minimum row/col over the output is 0; `order`
// is the DFS discovery index (the location id).
struct GridLocation {
  int order = 0;
  int row = 0, col = 0;
  Vec2 pos;
};

namespace detail {

// Node admissible: inside the map, on a free cell, and no occupied cell
// center strictly within `clearance` of the node position.
inline bool node_clear(const OccupancyGrid& grid, Vec2 p, double clearance) {
  int c = grid.col_of(p.x);
  int r = grid.row_of(p.y);
  if (!grid.in_bounds(r, c)) return false;
  if (grid.at(r, c) != Cell::Free) return false;
  if (clearance <= 0) return true;
  int reach = int(std::ceil(clearance / grid.resolution)) + 1;
  for (int dr = -reach; dr <= reach; ++dr)
    for (int dc = -reach; dc <= reach; ++dc) {
      int rr = r + dr, cc = c + dc;
      if (!grid.in_bounds(rr, cc) || grid.at(rr, cc) != Cell::Occupied) continue;
      Vec2 center = grid.cell_center(rr, cc);
      if (norm(center - p) < clearance) return false;
    }
  return true;
}

}  // namespace detail

// Depth-first sampling of navigable lattice locations on the obstacle
// map. The lattice is {start + grid_size * (i,j)}; output order is the
// DFS discovery order with neighbours explored N,E,S,W (an arbitrary,
// fixed tie-break). The discovered SET equals BFS reachability from the
// start through free, clear nodes.
inline std::vector<GridLocation> sample_grid_locations(const OccupancyGrid& grid, Vec2 start,
                                                       double grid_size, double clearance) {
  if (grid_size <= 0) fail(Err::BadArgument, "grid_size must be > 0");
  if (!grid.in_bounds(grid.row_of(start.y), grid.col_of(start.x)))
    fail(Err::StartOutsideGrid, "start position outside the obstacle map");
  if (!detail::node_clear(grid, start, clearance))
    fail(Err::StartBlocked, "start position blocked or without clearance");

  // Lattice coords relative to start: i along +x (east), j along -y
  // (south), so (j,i) already behaves like (row,col).
  auto pos_of = [&](int j, int i) { return Vec2{start.x + i * grid_size, start.y - j * grid_size}; };

  std::map<std::pair<int, int>, int> discovered;  // (j,i) -> discovery order
  std::vector<std::pair<int, int>> out_cells;
  std::vector<std::pair<int, int>> stack{{0, 0}};
  discovered[{0, 0}] = 0;
  out_cells.push_back({0, 0});
  while (!stack.empty()) {
    auto [j, i] = stack.back();
    stack.pop_back();
    // N,E,S,W exploration order; pushed in reverse so N pops first.
    const std::pair<int, int> nbrs[4] = {{j - 1, i}, {j, i + 1}, {j + 1, i}, {j, i - 1}};
    for (int k = 3; k >= 0; --k) {
      auto nb = nbrs[k];
      if (discovered.count(nb)) continue;
      if (!detail::node_clear(grid, pos_of(nb.first, nb.second), clearance)) continue;
      discovered[nb] = int(out_cells.size());
      out_cells.push_back(nb);
      stack.push_back(nb);
    }
  }

  int min_j = 0, min_i = 0;
  for (auto [j, i] : out_cells) {
    min_j = std::min(min_j, j);
    min_i = std::min(min_i, i);
  }
  std::vector<GridLocation> out;
  out.reserve(out_cells.size());
  for (std::size_t n = 0; n < out_cells.size(); ++n) {
    auto [j, i] = out_cells[n];
    out.push_back({int(n), j - min_j, i - min_i, pos_of(j, i)});
  }
  return out;
}

// DFS walk over the sampled locations: starts at the first location,
// revisits nodes while backtracking. Consecutive entries are lattice
// 4-adjacent, every location appears, length <= 2N-1.
inline std::vector<int> traversal_plan(const std::vector<GridLocation>& locations) {
  if (locations.empty()) fail(Err::BadArgument, "no locations to traverse");
  std::map<std::pair<int, int>, int> by_cell;
  for (const auto& loc : locations) by_cell[{loc.row, loc.col}] = loc.order;

  std::vector<int> plan;
  std::vector<bool> visited(locations.size(), false);
  // Recursive DFS via explicit stack of (node, next neighbour index).
  std::vector<std::pair<int, int>> stack{{0, 0}};
  visited[0] = true;
  plan.push_back(locations[0].order);
  while (!stack.empty()) {
    auto& [id, k] = stack.back();
    const auto& loc = locations[std::size_t(id)];
    const std::pair<int, int> nbrs[4] = {{loc.row - 1, loc.col},
                                         {loc.row, loc.col + 1},
                                         {loc.row + 1, loc.col},
                                         {loc.row, loc.col - 1}};
    bool descended = false;
    while (k < 4) {
      auto it = by_cell.find(nbrs[std::size_t(k++)]);
      if (it == by_cell.end() || visited[std::size_t(it->second)]) continue;
      visited[std::size_t(it->second)] = true;
      plan.push_back(it->second);
      stack.push_back({it->second, 0});
      descended = true;
      break;
    }
    if (!descended && k >= 4) {
      stack.pop_back();
      if (!stack.empty()) plan.push_back(stack.back().first);  // backtrack hop
    }
  }
  if (std::size_t(std::count(visited.begin(), visited.end(), true)) != locations.size())
    fail(Err::Disconnected, "location set is not connected under 4-adjacency");
  return plan;
}

}  // namespace gridnav
