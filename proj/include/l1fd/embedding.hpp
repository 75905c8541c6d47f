#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "l1fd/grid_partition.hpp"
#include "l1fd/net_builder.hpp"
#include "l1fd/point_set.hpp"
#include "l1fd/projection.hpp"
#include "l1fd/rng.hpp"

namespace l1fd {

enum class EmbeddingVariant { net, grid };

/// Target-dimension plan. zeta_cal and exponent_cal stand in for the
/// paper-level constants that are never instantiated (1/zeta(eps) and the
/// Theta(1/eps) exponent).
struct DimensionPlan {
  std::size_t k = 0;
  double epsilon = 0.0;
  double scale_param = 1.0;  // c for the net variant, d for the grid variant
  double lambda_estimate = 1.0;
  double zeta_cal = 1.0;
  double exponent_cal = 2.0;
};

/// Greedy empirical stand-in for the doubling constant: over sampled
/// centers and the given radii, cover B(p,r) with (r/2)-balls centered at
/// points and return the largest cover size seen. Upper-bound flavored.
double estimate_doubling_constant(const PointSet& points,
                                  std::span<const double> scales,
                                  const RandomSeed& seed,
                                  std::size_t max_centers = 64);

/// Explicit far-point requirement: smallest k with
///   k >= 4*log2(lambda)*log2(scale*D0/eps) + 2*log2(2*lambda/delta),
/// where D0 = ceil(800*T/k) and T = (k/pi)*ln(1+(k/eps)^2) both depend on
/// k; resolved by fixed-point iteration (<= 64 steps).
struct Lemma8Requirement {
  std::size_t k = 0;
  double d0 = 0.0;
  std::size_t iterations = 0;
};
Lemma8Requirement lemma8_dimension(double lambda, double epsilon,
                                   double scale_param, double delta);

/// Headline dimension formula
///   k = ceil(zeta_cal * max(2, log2(lambda)*log2(scale/eps))^{exponent_cal/eps}).
/// Monotone in lambda and scale_param, nonincreasing in epsilon. Throws
/// std::overflow_error when the formula exceeds representable range.
DimensionPlan plan_dimension(double lambda_estimate, double epsilon,
                             double scale_param, double zeta_cal = 1.0,
                             double exponent_cal = 2.0);

/// Practical plan: k taken from lemma8_dimension at delta = epsilon/5
/// (the choice used to assemble the end-to-end guarantee).
DimensionPlan plan_dimension_lemma8(double lambda_estimate, double epsilon,
                                    double scale_param);

/// Escalate a plan so it also satisfies the explicit far-point inequality.
DimensionPlan escalate_plan(const DimensionPlan& plan);

/// h = f o g with g the assignment onto a c-approximate (eps/c)-net.
struct NetEmbedding {
  DimensionPlan plan;
  double epsilon = 0.0;
  double c = 1.0;
  NetResult net;
  PointSet center_coords;                    // |N| x d
  std::vector<std::size_t> center_ordinal;   // point index -> center row
  CauchyMatrix matrix;
};

/// h' = f o g_{eps/d}; oblivious to the point set.
struct GridEmbedding {
  DimensionPlan plan;
  double epsilon = 0.0;
  ShiftedGrid grid;  // w = eps/d
  CauchyMatrix matrix;
};

struct EmbeddedDataset {
  EmbeddingVariant variant = EmbeddingVariant::net;
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<double> vectors;  // n x k row-major

  std::span<const double> vec(std::size_t i) const {
    return {vectors.data() + i * k, k};
  }
};

std::pair<NetEmbedding, EmbeddedDataset> embed_dataset_net(
    const PointSet& points, double epsilon, double c, const DimensionPlan& plan,
    const NetBuilderConfig& net_config, const RandomSeed& seed);

std::pair<GridEmbedding, EmbeddedDataset> embed_dataset_grid(
    const PointSet& points, double epsilon, const DimensionPlan& plan,
    const RandomSeed& seed);

/// Queries skip the representative step: only f is applied.
std::vector<double> embed_query(const NetEmbedding& e, std::span<const double> q);
std::vector<double> embed_query(const GridEmbedding& e, std::span<const double> q);

/// Dataset-side embedding of one point under the grid variant; depends
/// only on (grid, matrix, p), never on other points.
std::vector<double> embed_point(const GridEmbedding& e, std::span<const double> p);

/// Representative of p in the original space (grid variant).
std::vector<double> representative(const GridEmbedding& e, std::span<const double> p);

struct FarPointAudit {
  double d0 = 0.0;
  std::size_t far_reps = 0;
  std::size_t violations = 0;  // far reps whose image landed closer than 4
  double min_far_image_distance = 0.0;
  bool pass = true;
};

/// Check that every representative at distance >= D0 from q maps at least
/// 4 away from f(q). D0 defaults to ceil(800*T/k).
FarPointAudit far_point_audit(const CauchyMatrix& matrix, const PointSet& reps,
                              std::span<const double> q,
                              std::optional<double> d0_override = {});
FarPointAudit far_point_audit(const NetEmbedding& e, std::span<const double> q,
                              std::optional<double> d0_override = {});

}  // namespace l1fd
