#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "l1fd/point_set.hpp"
#include "l1fd/rng.hpp"

namespace l1fd {

/// Randomly shifted grid of cell width w: axis i is partitioned at
/// offsets[i] + w*Z. Offsets are i.i.d. uniform in [0, w).
struct ShiftedGrid {
  double w = 0.0;
  std::vector<double> offsets;
  std::uint64_t seed_key = 0;

  std::size_t dim() const { return offsets.size(); }
};

using CellId = std::vector<std::int64_t>;

struct GridCell {
  CellId id;
  std::vector<double> representative;  // anchor corner offsets + w*id
  std::vector<std::size_t> members;
};

/// Snapshot of a point set on a shifted grid: one representative per
/// non-empty cell, every point within l1 distance d*w of its representative.
struct GridCover {
  double w = 0.0;
  std::uint64_t seed_key = 0;
  std::vector<GridCell> cells;              // sorted by cell id
  std::vector<std::size_t> member_of;       // point index -> cell index
};

ShiftedGrid make_grid(std::size_t d, double w, const RandomSeed& seed);

/// Coordinate-wise floor((x_i - t_i)/w). Negative ids are legal.
CellId cell_of(const ShiftedGrid& grid, std::span<const double> x);

/// Representative (anchor corner) of the cell containing x.
std::vector<double> cell_anchor(const ShiftedGrid& grid,
                                std::span<const double> x);

GridCover build_cover(const ShiftedGrid& grid, const PointSet& points);

/// Expected number of grid cells intersecting an l1-ball of radius r:
/// (1 + 2r/w)^d.
double expected_cell_bound(double r, double w, std::size_t d);

/// Per-annulus growth record for the Lemma 10/11 style checks.
struct GrowthAnnulus {
  int i = 0;              // annulus index; radius D_{i+1} = 2^{2(i+1)} * D0
  double radius = 0.0;    // D_{i+1}
  double mean_count = 0.0;
  double bound = 0.0;     // 4^{i+3} * lambda^{2*log2(d*D_{i+1}/eps)}
};

struct GrowthReport {
  std::vector<GrowthAnnulus> annuli;       // i = 0, 1, ...
  double simultaneous_fraction = 0.0;       // all i >= 0 bounds hold at once
  double a_minus1_mean = 0.0;               // representatives within D0
  double a_minus1_bound = 0.0;              // 32 * lambda^{2*log2(d*D0/eps)}
  double a_minus1_fraction = 0.0;
  std::size_t trials = 0;
};

/// Redraws the grid `trials` times and measures the number of cell
/// representatives within each radius D_{i+1} of q against the doubling
/// bound 4^{i+3} * lambda^{2*log2(d*D_{i+1}/eps)}.
GrowthReport estimate_cover_growth(const PointSet& points, double w,
                                   std::span<const double> q, double D0,
                                   std::size_t trials, double lambda_estimate,
                                   double epsilon, const RandomSeed& seed);

/// Mean |g_w(B(q,R) cap P)| over `trials` fresh grids (Lemma 10 left side).
double estimate_ball_image_size(const PointSet& points, double w,
                                std::span<const double> q, double R,
                                std::size_t trials, const RandomSeed& seed);

}  // namespace l1fd
