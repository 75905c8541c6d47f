#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "l1fd/point_set.hpp"
#include "l1fd/rng.hpp"

namespace l1fd {

/// A c-approximate r-net: centers pairwise more than r apart (packing),
/// every point assigned to a center within c*r (covering), centers
/// assigned to themselves.
struct NetResult {
  std::vector<std::size_t> centers;
  std::vector<std::size_t> assignment;  // point index -> center point index
  double r = 0.0;
  double c = 1.0;
  bool certified = true;  // packing/covering verified after the build
};

/// Tunables for the LSH-based net construction. Zero-valued fields are
/// resolved from (n, d, c) at build time; see ResolvedNetParams.
struct NetBuilderConfig {
  double a1 = 2.0;           // table count multiplier
  double a2 = 1.0;           // false-positive budget multiplier
  double c_prime = 0.0;      // effective LSH exponent; 0 -> Hamming gap of the code
  std::size_t num_tables = 0;
  std::size_t concat_len = 0;
  std::uint64_t fp_budget = 0;
  std::size_t repeats = 0;   // outer repetitions; 0 -> ceil(log2 n)
  RandomSeed seed;
};

/// Parameters actually used by a build, after rescaling to r = 1.
struct ResolvedNetParams {
  double delta_snap = 0.0;       // 1/(10*d*c), then shrunk so 2/delta is integral
  std::size_t levels_per_axis = 0;  // 2/delta_snap
  double grid_side = 2.0;
  double c_prime = 1.0;
  std::size_t num_tables = 0;
  std::size_t concat_len = 0;
  std::uint64_t fp_budget = 0;
  std::size_t repeats = 1;
};

struct NetBuildStats {
  std::size_t repeats_used = 0;
  std::uint64_t max_scanned_per_query = 0;
  std::uint64_t total_false_positives = 0;
  bool budget_exhausted = false;
};

struct NetBuildOutcome {
  NetResult net;
  ResolvedNetParams params;
  NetBuildStats stats;
};

/// Divide every coordinate by r so that the target radius becomes 1.
PointSet rescale_to_unit(const PointSet& points, double r);

/// Unary code of a snapped coordinate: z ones followed by (levels - z)
/// zeros. Hamming distance between two codes equals |z1 - z2|.
std::vector<std::uint8_t> unary_encode(std::size_t z, std::size_t levels);

ResolvedNetParams resolve_net_params(std::size_t n, std::size_t d, double c,
                                     const NetBuilderConfig& config);

/// Randomized c-approximate r-net via randomly shifted grids, delta
/// snapping, unary-code bit-sampling LSH and greedy marking. Covering is
/// structural (points are only marked within c*r of a center); packing is
/// verified after each attempt and failed attempts are retried with fresh
/// randomness. If every repeat fails verification the last attempt is
/// returned with certified = false.
NetResult build_approx_net(const PointSet& points, double r, double c,
                           const NetBuilderConfig& config);
NetBuildOutcome build_approx_net_ex(const PointSet& points, double r, double c,
                                    const NetBuilderConfig& config);

/// Exact greedy 1-approximate r-net over the input order: a point becomes
/// a center iff no earlier center lies within r.
NetResult brute_force_net(const PointSet& points, double r);

struct NetVerification {
  bool packing_ok = false;
  bool covering_ok = false;
  double worst_cover_ratio = 0.0;  // max assigned distance / r
};

/// Check Definition-level packing/covering exactly in O(|N|^2 d + n d).
NetVerification verify_net(const PointSet& points, const NetResult& net);

}  // namespace l1fd
