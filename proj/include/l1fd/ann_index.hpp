#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "l1fd/embedding.hpp"
#include "l1fd/net_builder.hpp"
#include "l1fd/point_set.hpp"
#include "l1fd/rng.hpp"

namespace l1fd {

/// Uniform grid over the embedded space R^k, cell side (1+3eps)/k per
/// axis. Query-time cell enumeration falls back to a linear scan over the
/// embedded vectors whenever the number of intersected cells exceeds 2n,
/// which preserves the candidate-containment guarantee at any k.
struct BucketTable {
  double cell_width = 0.0;
  std::vector<std::uint64_t> keys;     // sorted cell-hash per point, by key
  std::vector<std::uint32_t> order;    // point ids sorted alongside keys
};

struct IndexRepetition {
  EmbeddingVariant variant = EmbeddingVariant::net;
  CauchyMatrix matrix;
  EmbeddedDataset embedded;
  BucketTable buckets;
};

struct AnnQueryStats {
  std::size_t repetitions_probed = 0;
  std::size_t candidates_checked = 0;
  bool used_fallback = false;
};

/// Decision-version (c,R)-near-neighbor structure with R = 1: returns a
/// point within 1+9eps when some point lies within 1, never returns a
/// point farther than 1+9eps, and may return nothing in the gray zone.
class AnnIndex {
 public:
  struct BuildOptions {
    double amplification_constant = 2.0;  // a in m = ceil((a/eps)ln(1/fail))
    std::size_t k_override = 0;           // 0 -> plan_dimension_lemma8
    double lambda_hint = 0.0;             // 0 -> estimate from the data
    NetBuilderConfig net_config;          // net variant only
    std::size_t max_m = 64;
  };

  static AnnIndex build(const PointSet& points, double epsilon, double c,
                        EmbeddingVariant variant, double fail_prob,
                        const RandomSeed& seed,
                        const BuildOptions& options = {});

  std::optional<std::size_t> query(std::span<const double> q) const;
  std::optional<std::size_t> query(std::span<const double> q,
                                   AnnQueryStats& stats) const;

  /// Persist as a directory: manifest.json + per-repetition matrix and
  /// embedded-vector artifacts. The dataset itself is not stored; load()
  /// re-attaches it.
  void save(const std::string& dir) const;
  static AnnIndex load(const std::string& dir, const PointSet& points);

  std::size_t repetitions() const { return reps_.size(); }
  double epsilon() const { return epsilon_; }
  double fail_prob() const { return fail_prob_; }
  EmbeddingVariant variant() const { return variant_; }
  const PointSet& points() const { return points_; }
  const IndexRepetition& repetition(std::size_t i) const { return reps_[i]; }

 private:
  PointSet points_;
  EmbeddingVariant variant_ = EmbeddingVariant::net;
  double epsilon_ = 0.0;
  double c_ = 1.0;
  double fail_prob_ = 0.0;
  double amplification_constant_ = 2.0;
  std::uint64_t seed_value_ = 0;
  std::string seed_label_;
  std::vector<IndexRepetition> reps_;
};

/// Exact O(nd) scan: nearest point if within threshold, else nothing.
std::optional<std::size_t> linear_scan_oracle(const PointSet& points,
                                              std::span<const double> q,
                                              double threshold);

}  // namespace l1fd
