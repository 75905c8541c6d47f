#include "l1fd/grid_partition.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace l1fd {

namespace {
// Cell ids are 64-bit per axis; keep well away from the edge.
constexpr double kMaxCellMagnitude = 4.6e18;
}  // namespace

ShiftedGrid make_grid(std::size_t d, double w, const RandomSeed& seed) {
  if (!(w > 0.0)) throw std::invalid_argument("make_grid: w must be > 0");
  if (d < 1) throw std::invalid_argument("make_grid: d must be >= 1");
  ShiftedGrid grid;
  grid.w = w;
  CounterRng rng(seed.derive("grid-offsets"));
  grid.seed_key = rng.key();
  grid.offsets.resize(d);
  for (double& t : grid.offsets) t = rng.next_uniform(w);
  return grid;
}

CellId cell_of(const ShiftedGrid& grid, std::span<const double> x) {
  if (x.size() != grid.dim()) {
    throw std::invalid_argument("cell_of: dimension mismatch");
  }
  CellId id(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double q = (x[i] - grid.offsets[i]) / grid.w;
    if (!(std::abs(q) < kMaxCellMagnitude)) {
      throw std::invalid_argument("cell_of: coordinate exceeds cell id range");
    }
    id[i] = static_cast<std::int64_t>(std::floor(q));
  }
  return id;
}

std::vector<double> cell_anchor(const ShiftedGrid& grid,
                                std::span<const double> x) {
  const CellId id = cell_of(grid, x);
  std::vector<double> anchor(id.size());
  for (std::size_t i = 0; i < id.size(); ++i) {
    anchor[i] = grid.offsets[i] + grid.w * static_cast<double>(id[i]);
  }
  return anchor;
}

GridCover build_cover(const ShiftedGrid& grid, const PointSet& points) {
  GridCover cover;
  cover.w = grid.w;
  cover.seed_key = grid.seed_key;
  cover.member_of.resize(points.size());
  std::map<CellId, std::size_t> index_of;
  for (std::size_t i = 0; i < points.size(); ++i) {
    CellId id = cell_of(grid, points.point(i));
    auto [it, inserted] = index_of.try_emplace(std::move(id), cover.cells.size());
    if (inserted) {
      GridCell cell;
      cell.id = it->first;
      cell.representative.resize(cell.id.size());
      for (std::size_t j = 0; j < cell.id.size(); ++j) {
        cell.representative[j] =
            grid.offsets[j] + grid.w * static_cast<double>(cell.id[j]);
      }
      cover.cells.push_back(std::move(cell));
    }
    cover.cells[it->second].members.push_back(i);
    cover.member_of[i] = it->second;
  }
  // map iteration is ordered, but cells were appended in first-seen order;
  // re-sort so serialized output is canonical.
  std::vector<std::size_t> perm(cover.cells.size());
  std::vector<std::size_t> rank(cover.cells.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return cover.cells[a].id < cover.cells[b].id;
  });
  std::vector<GridCell> sorted;
  sorted.reserve(cover.cells.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    rank[perm[i]] = i;
    sorted.push_back(std::move(cover.cells[perm[i]]));
  }
  cover.cells = std::move(sorted);
  for (auto& m : cover.member_of) m = rank[m];
  return cover;
}

double expected_cell_bound(double r, double w, std::size_t d) {
  if (!(w > 0.0)) throw std::invalid_argument("expected_cell_bound: w > 0");
  if (r < 0.0) throw std::invalid_argument("expected_cell_bound: r >= 0");
  return std::pow(1.0 + 2.0 * r / w, static_cast<double>(d));
}

namespace {

double doubling_growth_bound(double lambda, std::size_t d, double radius,
                             double epsilon) {
  const double x = static_cast<double>(d) * radius / epsilon;
  const double exponent = 2.0 * std::log2(std::max(x, 1.0));
  return std::pow(std::max(lambda, 1.0), exponent);
}

}  // namespace

GrowthReport estimate_cover_growth(const PointSet& points, double w,
                                   std::span<const double> q, double D0,
                                   std::size_t trials, double lambda_estimate,
                                   double epsilon, const RandomSeed& seed) {
  if (trials < 1) throw std::invalid_argument("estimate_cover_growth: trials >= 1");
  if (!(D0 > 0.0)) throw std::invalid_argument("estimate_cover_growth: D0 > 0");
  const std::size_t d = points.dim();

  double max_dist = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    max_dist = std::max(max_dist, l1_distance(points.point(i), q));
  }
  // Representatives sit within d*w of their points; last annulus index is
  // the first whose radius swallows every representative.
  int i_max = 0;
  while (std::ldexp(D0, 2 * (i_max + 1)) < max_dist + w * static_cast<double>(d) &&
         i_max < 60) {
    ++i_max;
  }

  GrowthReport rep;
  rep.trials = trials;
  rep.annuli.resize(static_cast<std::size_t>(i_max) + 1);
  for (int i = 0; i <= i_max; ++i) {
    auto& a = rep.annuli[static_cast<std::size_t>(i)];
    a.i = i;
    a.radius = std::ldexp(D0, 2 * (i + 1));  // 2^{2(i+1)} * D0
    a.bound = std::pow(4.0, i + 3) *
              doubling_growth_bound(lambda_estimate, d, a.radius, epsilon);
  }
  rep.a_minus1_bound =
      32.0 * doubling_growth_bound(lambda_estimate, d, D0, epsilon);

  std::size_t simultaneous_hits = 0;
  std::size_t a_minus1_hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const ShiftedGrid grid = make_grid(d, w, seed.derive("trial", t));
    const GridCover cover = build_cover(grid, points);
    std::vector<double> rep_dist(cover.cells.size());
    for (std::size_t ci = 0; ci < cover.cells.size(); ++ci) {
      rep_dist[ci] = l1_distance(cover.cells[ci].representative, q);
    }
    bool all_ok = true;
    for (int i = 0; i <= i_max; ++i) {
      auto& a = rep.annuli[static_cast<std::size_t>(i)];
      std::size_t count = 0;
      for (double dist : rep_dist) {
        if (dist <= a.radius) ++count;
      }
      a.mean_count += static_cast<double>(count);
      if (static_cast<double>(count) > a.bound) all_ok = false;
    }
    if (all_ok) ++simultaneous_hits;
    std::size_t count0 = 0;
    for (double dist : rep_dist) {
      if (dist <= D0) ++count0;
    }
    rep.a_minus1_mean += static_cast<double>(count0);
    if (static_cast<double>(count0) <= rep.a_minus1_bound) ++a_minus1_hits;
  }
  for (auto& a : rep.annuli) a.mean_count /= static_cast<double>(trials);
  rep.a_minus1_mean /= static_cast<double>(trials);
  rep.simultaneous_fraction =
      static_cast<double>(simultaneous_hits) / static_cast<double>(trials);
  rep.a_minus1_fraction =
      static_cast<double>(a_minus1_hits) / static_cast<double>(trials);
  return rep;
}

double estimate_ball_image_size(const PointSet& points, double w,
                                std::span<const double> q, double R,
                                std::size_t trials, const RandomSeed& seed) {
  if (trials < 1) throw std::invalid_argument("estimate_ball_image_size: trials >= 1");
  std::vector<std::size_t> inside;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (l1_distance(points.point(i), q) <= R) inside.push_back(i);
  }
  if (inside.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const ShiftedGrid grid = make_grid(points.dim(), w, seed.derive("ball", t));
    std::set<CellId> cells;
    for (std::size_t i : inside) cells.insert(cell_of(grid, points.point(i)));
    total += static_cast<double>(cells.size());
  }
  return total / static_cast<double>(trials);
}

}  // namespace l1fd
