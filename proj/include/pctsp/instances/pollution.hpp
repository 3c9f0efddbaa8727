#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "pctsp/instances/generators.hpp"

namespace pctsp {

/// Synthetic road network under a smooth pollution field.
struct PollutionParams {
  double spacing = 100.0;       // grid pitch of the road network
  double jitter = 0.2;          // node displacement, fraction of the pitch
  double diagonal_prob = 0.7;   // chance that a grid square gets a diagonal road
  double removal_prob = 0.1;    // chance that a road is dropped (if still connected)
  int cells_per_side = 16;      // pollution lattice resolution
  int bumps = 8;                // radial hot spots
  double base_level = 1.0;      // background pollution
  double bump_height = 10.0;    // peak of a hot spot above background
  double bump_radius = 0.5;     // hot-spot radius in grid pitches
  double alpha = 0.5;           // quota fraction
};

struct PollutionField {
  double x0 = 0.0;
  double y0 = 0.0;
  double cell = 1.0;
  int side = 1;
  std::vector<double> value;  // row-major, side * side

  double at(double x, double y) const {
    const int cx = std::clamp(static_cast<int>(std::floor((x - x0) / cell)), 0, side - 1);
    const int cy = std::clamp(static_cast<int>(std::floor((y - y0) / cell)), 0, side - 1);
    return value[static_cast<std::size_t>(cy) * side + cx];
  }

  /// Mean value of the cells a segment passes through, by dense sampling.
  double mean_along(const Point& a, const Point& b) const {
    const double len = distance(a, b);
    const int samples = std::max(2, static_cast<int>(std::ceil(8.0 * len / cell)) + 1);
    std::set<std::pair<int, int>> cells;
    double sum = 0.0;
    for (int s = 0; s < samples; ++s) {
      const double t = static_cast<double>(s) / (samples - 1);
      const double x = a.x + t * (b.x - a.x);
      const double y = a.y + t * (b.y - a.y);
      const int cx = std::clamp(static_cast<int>(std::floor((x - x0) / cell)), 0, side - 1);
      const int cy = std::clamp(static_cast<int>(std::floor((y - y0) / cell)), 0, side - 1);
      if (cells.insert({cx, cy}).second) sum += value[static_cast<std::size_t>(cy) * side + cx];
    }
    return sum / static_cast<double>(cells.size());
  }
};

/// Road network: jittered square grid with random diagonals, thinned by
/// connectivity-preserving removals. Vertex 0 is a corner and keeps its roads.
inline std::pair<CoordinateSet, Topology> road_network(int n_target, const PollutionParams& p, Rng& rng) {
  const int side = std::max(2, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_target)))));
  CoordinateSet coords;
  coords.name = "roads" + std::to_string(side * side);
  auto id = [side](int r, int c) { return static_cast<Vertex>(r * side + c); };
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const double jx = uniform_real(rng, -p.jitter, p.jitter) * p.spacing;
      const double jy = uniform_real(rng, -p.jitter, p.jitter) * p.spacing;
      coords.labels.push_back(id(r, c) + 1);
      coords.points.push_back({c * p.spacing + jx, r * p.spacing + jy});
    }
  }
  Topology roads;
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      if (c + 1 < side) roads.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < side) roads.push_back({id(r, c), id(r + 1, c)});
      if (r + 1 < side && c + 1 < side && uniform_real(rng, 0.0, 1.0) < p.diagonal_prob) {
        if (uniform_int(rng, 0, 1) == 0) {
          roads.push_back({id(r, c), id(r + 1, c + 1)});
        } else {
          roads.push_back({std::min(id(r, c + 1), id(r + 1, c)), std::max(id(r, c + 1), id(r + 1, c))});
        }
      }
    }
  }
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj(coords.points.size());
  for (std::size_t i = 0; i < roads.size(); ++i) {
    adj[roads[i].first].push_back({roads[i].second, i});
    adj[roads[i].second].push_back({roads[i].first, i});
  }
  std::vector<char> alive(roads.size(), 1);
  for (std::size_t i = 0; i < roads.size(); ++i) {
    if (uniform_real(rng, 0.0, 1.0) >= p.removal_prob) continue;
    // The corner root has only two roads; losing one would leave no tour.
    if (roads[i].first == 0) continue;
    if (detail::reachable_without(adj, alive, roads[i].first, roads[i].second, i)) alive[i] = 0;
  }
  Topology kept;
  for (std::size_t i = 0; i < roads.size(); ++i)
    if (alive[i]) kept.push_back(roads[i]);
  std::sort(kept.begin(), kept.end());
  return {std::move(coords), std::move(kept)};
}

/// Background level plus Gaussian bumps, sampled at cell centres over the
/// bounding box of `coords` padded by half a pitch.
inline PollutionField pollution_field(const CoordinateSet& coords, const PollutionParams& p, Rng& rng) {
  double lo_x = coords.points[0].x, hi_x = lo_x, lo_y = coords.points[0].y, hi_y = lo_y;
  for (const Point& q : coords.points) {
    lo_x = std::min(lo_x, q.x);
    hi_x = std::max(hi_x, q.x);
    lo_y = std::min(lo_y, q.y);
    hi_y = std::max(hi_y, q.y);
  }
  PollutionField f;
  f.x0 = lo_x - p.spacing / 2;
  f.y0 = lo_y - p.spacing / 2;
  f.side = std::max(1, p.cells_per_side);
  f.cell = std::max(hi_x - lo_x, hi_y - lo_y) / f.side + p.spacing / f.side;
  struct Bump {
    double x, y, h, r;
  };
  std::vector<Bump> bumps;
  for (int b = 0; b < p.bumps; ++b) {
    bumps.push_back({uniform_real(rng, lo_x, hi_x), uniform_real(rng, lo_y, hi_y),
                     p.bump_height * uniform_real(rng, 0.5, 1.0),
                     p.bump_radius * p.spacing * uniform_real(rng, 0.5, 1.5)});
  }
  f.value.assign(static_cast<std::size_t>(f.side) * f.side, p.base_level);
  for (int cy = 0; cy < f.side; ++cy) {
    for (int cx = 0; cx < f.side; ++cx) {
      const double x = f.x0 + (cx + 0.5) * f.cell;
      const double y = f.y0 + (cy + 0.5) * f.cell;
      double& v = f.value[static_cast<std::size_t>(cy) * f.side + cx];
      for (const Bump& b : bumps) {
        const double d2 = (x - b.x) * (x - b.x) + (y - b.y) * (y - b.y);
        v += b.h * std::exp(-d2 / (2 * b.r * b.r));
      }
    }
  }
  return f;
}

/// Road network priced by pollution exposure, then edge-split so that road
/// length becomes collectable prize. Root is the corner vertex.
inline Instance synth_pollution_instance(int n_target, const PollutionParams& p, std::uint64_t seed) {
  if (n_target < 4 || p.spacing <= 0 || p.cells_per_side < 1 || p.base_level < 0 || p.bump_height < 0) {
    fail(Errc::Precondition, "pollution parameters must be positive");
  }
  Rng rng(seed);
  auto [coords, roads] = road_network(n_target, p, rng);
  const PollutionField field = pollution_field(coords, p, rng);
  std::vector<Edge> edges;
  std::vector<Prize> lengths;
  for (auto [u, v] : roads) {
    const double len = distance(coords.points[u], coords.points[v]);
    const double exposure = field.mean_along(coords.points[u], coords.points[v]) * len;
    edges.push_back({u, v, std::max<Cost>(1, std::llround(exposure))});
    lengths.push_back(std::max<Prize>(1, std::llround(len)));
  }
  std::vector<Prize> zero(coords.points.size(), 0);
  SparseGraph base(std::move(zero), std::move(edges), coords.labels);
  SparseGraph split = edge_split_transform(base, lengths);
  const Prize quota = set_quota(split.total_prize(), p.alpha);
  nlohmann::json meta = {{"generator", "pollution"}, {"seed", seed}, {"alpha", p.alpha}, {"road_vertices", base.vertex_count()},
                         {"road_edges", base.edge_count()}};
  return Instance(std::move(split), quota, 0, "pollution-" + std::to_string(n_target) + "-s" + std::to_string(seed),
                  std::move(meta));
}

}  // namespace pctsp
