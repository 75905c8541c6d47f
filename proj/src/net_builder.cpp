#include "l1fd/net_builder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace l1fd {

PointSet rescale_to_unit(const PointSet& points, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("rescale_to_unit: r must be > 0");
  PointSet scaled = points;
  for (double& v : scaled.data()) v /= r;
  return scaled;
}

std::vector<std::uint8_t> unary_encode(std::size_t z, std::size_t levels) {
  if (z > levels) throw std::invalid_argument("unary_encode: z out of range");
  std::vector<std::uint8_t> code(levels, 0);
  std::fill(code.begin(), code.begin() + static_cast<std::ptrdiff_t>(z), 1);
  return code;
}

ResolvedNetParams resolve_net_params(std::size_t n, std::size_t d, double c,
                                     const NetBuilderConfig& config) {
  if (n < 1 || d < 1) throw std::invalid_argument("resolve_net_params: n, d >= 1");
  if (!(c >= 1.0)) throw std::invalid_argument("resolve_net_params: c >= 1");
  ResolvedNetParams p;
  // 2/delta rounded up to an integer keeps unary codes well formed and
  // only shrinks the snapping error.
  p.levels_per_axis = static_cast<std::size_t>(
      std::ceil(20.0 * static_cast<double>(d) * c));
  p.delta_snap = 2.0 / static_cast<double>(p.levels_per_axis);
  p.grid_side = 2.0;

  const double levels = static_cast<double>(p.levels_per_axis);
  const double code_len = static_cast<double>(d) * levels;
  if (config.c_prime > 0.0) {
    p.c_prime = config.c_prime;
  } else {
    // Hamming sensitivity gap of the snapped unary code: near pairs land
    // within rho = levels+1 bits, far pairs at >= c*levels - 1.
    const double rho = levels + 1.0;
    const double far = c * levels - 1.0;
    p.c_prime = std::max(1.0, far / rho);
  }

  const double nn = static_cast<double>(n);
  const double log_n = std::log(std::max(nn, 2.0));
  if (config.num_tables > 0) {
    p.num_tables = config.num_tables;
  } else {
    p.num_tables = static_cast<std::size_t>(
        std::ceil(config.a1 * std::pow(nn, 1.0 / p.c_prime) * log_n));
    p.num_tables = std::max<std::size_t>(p.num_tables, 1);
  }

  if (config.concat_len > 0) {
    p.concat_len = config.concat_len;
  } else {
    // Bits sampled per table so that far pairs collide with prob <= 1/n:
    // single-bit far collision is p2 = 1 - min(1, (c*levels - 1)/code_len).
    const double p2 = 1.0 - std::min(1.0, (c * levels - 1.0) / code_len);
    if (p2 <= 0.0 || n < 2) {
      p.concat_len = 1;
    } else {
      p.concat_len = static_cast<std::size_t>(
          std::max(1.0, std::ceil(log_n / std::log(1.0 / p2))));
    }
  }

  if (config.fp_budget > 0) {
    p.fp_budget = config.fp_budget;
  } else {
    // a2 * num_tables * n^2 * beta with beta = 1/n.
    p.fp_budget = static_cast<std::uint64_t>(
        std::ceil(config.a2 * static_cast<double>(p.num_tables) * nn));
    p.fp_budget = std::max<std::uint64_t>(p.fp_budget, 1);
  }

  p.repeats = config.repeats > 0
                  ? config.repeats
                  : std::max<std::size_t>(1, static_cast<std::size_t>(
                                                 std::ceil(std::log2(nn))));
  return p;
}

namespace {

struct HashTables {
  std::size_t num_tables = 0;
  std::size_t n = 0;
  std::vector<std::uint64_t> point_key;  // table-major: [table*n + point]
  std::vector<std::uint32_t> order;      // per table, point ids sorted by key
};

// Per-table randomness: one grid shift per axis in [0, 2) plus concat_len
// sampled bit positions of the concatenated unary code.
HashTables build_tables(const PointSet& pts, const ResolvedNetParams& p,
                        const RandomSeed& seed) {
  const std::size_t n = pts.size();
  const std::size_t d = pts.dim();
  const std::size_t levels = p.levels_per_axis;
  const double inv_delta = static_cast<double>(levels) / 2.0;

  HashTables tables;
  tables.num_tables = p.num_tables;
  tables.n = n;
  tables.point_key.resize(p.num_tables * n);
  tables.order.resize(p.num_tables * n);

  std::vector<double> shifts(d);
  std::vector<std::uint32_t> bit_coord(p.concat_len);
  std::vector<std::uint32_t> bit_level(p.concat_len);
  std::vector<std::uint32_t> snapped(d);
  std::vector<std::int64_t> cell(d);

  for (std::size_t tb = 0; tb < p.num_tables; ++tb) {
    CounterRng rng(seed.derive("table", tb));
    for (std::size_t j = 0; j < d; ++j) shifts[j] = rng.next_uniform(2.0);
    for (std::size_t b = 0; b < p.concat_len; ++b) {
      const std::uint64_t pos = rng.next_below(d * levels);
      bit_coord[b] = static_cast<std::uint32_t>(pos / levels);
      bit_level[b] = static_cast<std::uint32_t>(pos % levels);
    }
    const std::uint64_t salt = rng.next_u64();

    std::uint64_t* keys = tables.point_key.data() + tb * n;
    for (std::size_t i = 0; i < n; ++i) {
      const std::span<const double> x = pts.point(i);
      std::uint64_t h = detail::mix64(salt);
      for (std::size_t j = 0; j < d; ++j) {
        const double rel = x[j] - shifts[j];
        const double cj = std::floor(rel / 2.0);
        cell[j] = static_cast<std::int64_t>(cj);
        // snapped coordinate within the cell, in [0, levels]
        const double frac = rel - 2.0 * cj;
        long z = std::lround(frac * inv_delta);
        z = std::clamp(z, 0L, static_cast<long>(levels));
        snapped[j] = static_cast<std::uint32_t>(z);
        h = detail::mix64(h ^ static_cast<std::uint64_t>(cell[j]));
      }
      std::uint64_t word = 0;
      unsigned fill = 0;
      for (std::size_t b = 0; b < p.concat_len; ++b) {
        word = (word << 1) | (bit_level[b] < snapped[bit_coord[b]] ? 1u : 0u);
        if (++fill == 64) {
          h = detail::mix64(h ^ word);
          word = 0;
          fill = 0;
        }
      }
      if (fill) h = detail::mix64(h ^ (word | (1ull << fill)));
      keys[i] = h;
    }

    std::uint32_t* ord = tables.order.data() + tb * n;
    for (std::size_t i = 0; i < n; ++i) ord[i] = static_cast<std::uint32_t>(i);
    std::sort(ord, ord + n, [keys](std::uint32_t a, std::uint32_t b) {
      if (keys[a] != keys[b]) return keys[a] < keys[b];
      return a < b;
    });
  }
  return tables;
}

struct Attempt {
  NetResult net;
  NetBuildStats stats;
};

Attempt greedy_mark(const PointSet& pts, const HashTables& tables,
                    const ResolvedNetParams& p, double c) {
  const std::size_t n = pts.size();
  Attempt out;
  out.net.assignment.assign(n, std::numeric_limits<std::size_t>::max());
  std::vector<std::uint8_t> marked(n, 0);
  std::vector<std::uint8_t> is_center(n, 0);
  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t epoch = 0;

  std::vector<std::uint32_t> near_candidates;  // distance <= c
  near_candidates.reserve(256);
  std::vector<double> near_distance;
  near_distance.reserve(256);

  for (std::size_t i = 0; i < n; ++i) {
    if (marked[i]) continue;
    ++epoch;
    near_candidates.clear();
    near_distance.clear();
    std::uint64_t false_positives = 0;
    std::uint64_t scanned = 0;
    std::size_t covering_center = std::numeric_limits<std::size_t>::max();
    bool stopped = false;

    for (std::size_t tb = 0; tb < tables.num_tables && !stopped; ++tb) {
      const std::uint64_t* keys = tables.point_key.data() + tb * n;
      const std::uint32_t* ord = tables.order.data() + tb * n;
      const std::uint64_t key = keys[i];
      // locate the bucket [lo, hi) of `key` in this table
      std::size_t lo = 0, hi = n;
      while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (keys[ord[mid]] < key) lo = mid + 1; else hi = mid;
      }
      for (std::size_t pos = lo; pos < n && keys[ord[pos]] == key; ++pos) {
        const std::uint32_t j = ord[pos];
        if (j == i || stamp[j] == epoch) continue;
        stamp[j] = epoch;
        ++scanned;
        const double dist = pts.distance(i, j);
        if (dist > c) {
          if (++false_positives > p.fp_budget) {
            stopped = true;
            break;
          }
          continue;
        }
        near_candidates.push_back(j);
        near_distance.push_back(dist);
        if (is_center[j] && dist <= 1.0 &&
            covering_center == std::numeric_limits<std::size_t>::max()) {
          covering_center = j;
        }
      }
    }

    out.stats.max_scanned_per_query =
        std::max(out.stats.max_scanned_per_query, scanned);
    out.stats.total_false_positives += false_positives;
    out.stats.budget_exhausted |= stopped;

    if (covering_center != std::numeric_limits<std::size_t>::max()) {
      // A retained center lies within r; do not open a new center.
      out.net.assignment[i] = covering_center;
      marked[i] = 1;
      continue;
    }
    out.net.centers.push_back(i);
    is_center[i] = 1;
    marked[i] = 1;
    out.net.assignment[i] = i;
    for (std::size_t t = 0; t < near_candidates.size(); ++t) {
      const std::uint32_t j = near_candidates[t];
      if (!marked[j]) {
        marked[j] = 1;
        out.net.assignment[j] = i;
      }
    }
  }
  return out;
}

}  // namespace

NetResult brute_force_net(const PointSet& points, double r) {
  if (points.empty()) throw std::invalid_argument("brute_force_net: empty input");
  NetResult net;
  net.r = r;
  net.c = 1.0;
  net.certified = true;
  const std::size_t n = points.size();
  net.assignment.assign(n, std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t owner = std::numeric_limits<std::size_t>::max();
    for (std::size_t c : net.centers) {
      if (points.distance(i, c) <= r) {
        owner = c;
        break;
      }
    }
    if (owner == std::numeric_limits<std::size_t>::max()) {
      net.centers.push_back(i);
      net.assignment[i] = i;
    } else {
      net.assignment[i] = owner;
    }
  }
  return net;
}

NetVerification verify_net(const PointSet& points, const NetResult& net) {
  NetVerification v;
  v.packing_ok = true;
  v.covering_ok = true;
  for (std::size_t a = 0; a < net.centers.size() && v.packing_ok; ++a) {
    for (std::size_t b = a + 1; b < net.centers.size(); ++b) {
      if (points.distance(net.centers[a], net.centers[b]) <= net.r) {
        v.packing_ok = false;
        break;
      }
    }
  }
  const double cover_limit = net.c * net.r;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::size_t owner = net.assignment.at(i);
    if (owner >= points.size()) {
      v.covering_ok = false;
      continue;
    }
    const double dist = points.distance(i, owner);
    v.worst_cover_ratio = std::max(v.worst_cover_ratio, dist / net.r);
    if (dist > cover_limit) v.covering_ok = false;
  }
  return v;
}

NetBuildOutcome build_approx_net_ex(const PointSet& points, double r, double c,
                                    const NetBuilderConfig& config) {
  if (points.empty()) throw std::invalid_argument("build_approx_net: empty input");
  if (!(r > 0.0)) throw std::invalid_argument("build_approx_net: r > 0");
  if (!(c >= 1.0)) throw std::invalid_argument("build_approx_net: c >= 1");

  const PointSet scaled = rescale_to_unit(points, r);
  NetBuildOutcome out;
  out.params = resolve_net_params(points.size(), points.dim(), c, config);

  NetBuildStats agg;
  NetResult last;
  for (std::size_t rep = 0; rep < out.params.repeats; ++rep) {
    const HashTables tables =
        build_tables(scaled, out.params, config.seed.derive("repeat", rep));
    Attempt attempt = greedy_mark(scaled, tables, out.params, c);
    attempt.net.r = r;
    attempt.net.c = c;
    agg.repeats_used = rep + 1;
    agg.max_scanned_per_query = std::max(agg.max_scanned_per_query,
                                         attempt.stats.max_scanned_per_query);
    agg.total_false_positives += attempt.stats.total_false_positives;
    agg.budget_exhausted |= attempt.stats.budget_exhausted;

    const NetVerification v = verify_net(points, attempt.net);
    if (v.packing_ok && v.covering_ok) {
      attempt.net.certified = true;
      out.net = std::move(attempt.net);
      out.stats = agg;
      return out;
    }
    last = std::move(attempt.net);
  }
  last.certified = false;
  out.net = std::move(last);
  out.stats = agg;
  return out;
}

NetResult build_approx_net(const PointSet& points, double r, double c,
                           const NetBuilderConfig& config) {
  return build_approx_net_ex(points, r, c, config).net;
}

}  // namespace l1fd
