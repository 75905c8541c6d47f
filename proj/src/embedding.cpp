#include "l1fd/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace l1fd {

double estimate_doubling_constant(const PointSet& points,
                                  std::span<const double> scales,
                                  const RandomSeed& seed,
                                  std::size_t max_centers) {
  if (points.size() < 2) {
    throw std::invalid_argument("estimate_doubling_constant: need n >= 2");
  }
  const std::size_t n = points.size();
  std::vector<std::size_t> centers;
  if (n <= max_centers) {
    centers.resize(n);
    for (std::size_t i = 0; i < n; ++i) centers[i] = i;
  } else {
    CounterRng rng(seed.derive("centers"));
    centers.resize(max_centers);
    for (auto& c : centers) c = rng.next_below(n);
  }

  double estimate = 1.0;
  std::vector<std::size_t> ball;
  std::vector<std::uint8_t> covered;
  for (double r : scales) {
    if (!(r > 0.0)) continue;
    for (std::size_t p : centers) {
      ball.clear();
      for (std::size_t i = 0; i < n; ++i) {
        if (points.distance(p, i) <= r) ball.push_back(i);
      }
      covered.assign(ball.size(), 0);
      std::size_t count = 0;
      for (std::size_t a = 0; a < ball.size(); ++a) {
        if (covered[a]) continue;
        ++count;
        for (std::size_t b = a; b < ball.size(); ++b) {
          if (!covered[b] &&
              points.distance(ball[a], ball[b]) <= r / 2.0) {
            covered[b] = 1;
          }
        }
      }
      estimate = std::max(estimate, static_cast<double>(count));
    }
  }
  return estimate;
}

Lemma8Requirement lemma8_dimension(double lambda, double epsilon,
                                   double scale_param, double delta) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("lemma8_dimension: lambda >= 1");
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw std::invalid_argument("lemma8_dimension: epsilon in (0, 1/2)");
  }
  if (!(scale_param >= 1.0)) {
    throw std::invalid_argument("lemma8_dimension: scale_param >= 1");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("lemma8_dimension: delta in (0,1)");
  }
  const double log_lambda = std::log2(lambda);
  std::size_t k = 32, prev = 0;
  for (std::size_t it = 0; it < 64; ++it) {
    const double t_over_k =
        std::log1p((static_cast<double>(k) / epsilon) *
                   (static_cast<double>(k) / epsilon)) /
        std::numbers::pi;
    const double d0 = std::ceil(800.0 * t_over_k);
    const double need = 4.0 * log_lambda * std::log2(scale_param * d0 / epsilon) +
                        2.0 * std::log2(2.0 * lambda / delta);
    const auto next = static_cast<std::size_t>(std::max(1.0, std::ceil(need)));
    if (next == k) return {k, d0, it + 1};
    if (next == prev) return {std::max(k, next), d0, it + 1};
    prev = k;
    k = next;
  }
  throw std::runtime_error(
      "lemma8_dimension: fixed point did not converge in 64 steps");
}

DimensionPlan plan_dimension(double lambda_estimate, double epsilon,
                             double scale_param, double zeta_cal,
                             double exponent_cal) {
  if (!(lambda_estimate >= 1.0)) {
    throw std::invalid_argument("plan_dimension: lambda_estimate >= 1");
  }
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw std::invalid_argument("plan_dimension: epsilon in (0, 1/2)");
  }
  if (!(scale_param >= 1.0)) {
    throw std::invalid_argument("plan_dimension: scale_param >= 1");
  }
  if (!(zeta_cal > 0.0) || !(exponent_cal > 0.0)) {
    throw std::invalid_argument("plan_dimension: calibration constants > 0");
  }
  const double base = std::max(
      2.0, std::log2(lambda_estimate) * std::log2(scale_param / epsilon));
  const double k = zeta_cal * std::pow(base, exponent_cal / epsilon);
  if (!std::isfinite(k) || k > 1e18) {
    throw std::overflow_error("plan_dimension: target dimension overflows");
  }
  DimensionPlan plan;
  plan.k = static_cast<std::size_t>(std::max(1.0, std::ceil(k)));
  plan.epsilon = epsilon;
  plan.scale_param = scale_param;
  plan.lambda_estimate = lambda_estimate;
  plan.zeta_cal = zeta_cal;
  plan.exponent_cal = exponent_cal;
  return plan;
}

DimensionPlan plan_dimension_lemma8(double lambda_estimate, double epsilon,
                                    double scale_param) {
  const Lemma8Requirement req =
      lemma8_dimension(lambda_estimate, epsilon, scale_param, epsilon / 5.0);
  DimensionPlan plan;
  plan.k = req.k;
  plan.epsilon = epsilon;
  plan.scale_param = scale_param;
  plan.lambda_estimate = lambda_estimate;
  return plan;
}

DimensionPlan escalate_plan(const DimensionPlan& plan) {
  const Lemma8Requirement req = lemma8_dimension(
      plan.lambda_estimate, plan.epsilon, plan.scale_param, plan.epsilon / 5.0);
  DimensionPlan out = plan;
  out.k = std::max(out.k, req.k);
  return out;
}

std::pair<NetEmbedding, EmbeddedDataset> embed_dataset_net(
    const PointSet& points, double epsilon, double c, const DimensionPlan& plan,
    const NetBuilderConfig& net_config, const RandomSeed& seed) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw std::invalid_argument("embed_dataset_net: epsilon in (0, 1/2)");
  }
  if (!(c >= 1.0)) throw std::invalid_argument("embed_dataset_net: c >= 1");
  if (points.empty()) throw std::invalid_argument("embed_dataset_net: empty set");

  NetEmbedding e;
  e.plan = plan;
  e.epsilon = epsilon;
  e.c = c;

  NetBuilderConfig cfg = net_config;
  cfg.seed = seed.derive("net");
  e.net = build_approx_net(points, epsilon / c, c, cfg);

  const std::size_t d = points.dim();
  e.center_coords = PointSet(e.net.centers.size(), d);
  std::vector<std::size_t> row_of(points.size());
  for (std::size_t row = 0; row < e.net.centers.size(); ++row) {
    const auto src = points.point(e.net.centers[row]);
    std::copy(src.begin(), src.end(), e.center_coords.point(row).begin());
    row_of[e.net.centers[row]] = row;
  }
  e.center_ordinal.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    e.center_ordinal[i] = row_of[e.net.assignment[i]];
  }

  e.matrix = make_projection(d, plan.k, epsilon, seed.derive("matrix"));
  const std::vector<double> center_images = project_all(e.matrix, e.center_coords);

  EmbeddedDataset ds;
  ds.variant = EmbeddingVariant::net;
  ds.n = points.size();
  ds.k = plan.k;
  ds.vectors.resize(ds.n * ds.k);
  for (std::size_t i = 0; i < ds.n; ++i) {
    const double* src = center_images.data() + e.center_ordinal[i] * ds.k;
    std::copy(src, src + ds.k, ds.vectors.data() + i * ds.k);
  }
  return {std::move(e), std::move(ds)};
}

std::pair<GridEmbedding, EmbeddedDataset> embed_dataset_grid(
    const PointSet& points, double epsilon, const DimensionPlan& plan,
    const RandomSeed& seed) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw std::invalid_argument("embed_dataset_grid: epsilon in (0, 1/2)");
  }
  if (points.empty()) throw std::invalid_argument("embed_dataset_grid: empty set");

  const std::size_t d = points.dim();
  GridEmbedding e;
  e.plan = plan;
  e.epsilon = epsilon;
  e.grid = make_grid(d, epsilon / static_cast<double>(d), seed.derive("grid"));
  e.matrix = make_projection(d, plan.k, epsilon, seed.derive("matrix"));

  // One projection per distinct cell; points in a cell share the image.
  const GridCover cover = build_cover(e.grid, points);
  PointSet anchors(cover.cells.size(), d);
  for (std::size_t ci = 0; ci < cover.cells.size(); ++ci) {
    std::copy(cover.cells[ci].representative.begin(),
              cover.cells[ci].representative.end(),
              anchors.point(ci).begin());
  }
  const std::vector<double> anchor_images = project_all(e.matrix, anchors);

  EmbeddedDataset ds;
  ds.variant = EmbeddingVariant::grid;
  ds.n = points.size();
  ds.k = plan.k;
  ds.vectors.resize(ds.n * ds.k);
  for (std::size_t i = 0; i < ds.n; ++i) {
    const double* src = anchor_images.data() + cover.member_of[i] * ds.k;
    std::copy(src, src + ds.k, ds.vectors.data() + i * ds.k);
  }
  return {std::move(e), std::move(ds)};
}

std::vector<double> embed_query(const NetEmbedding& e,
                                std::span<const double> q) {
  return project(e.matrix, q);
}

std::vector<double> embed_query(const GridEmbedding& e,
                                std::span<const double> q) {
  return project(e.matrix, q);
}

std::vector<double> representative(const GridEmbedding& e,
                                   std::span<const double> p) {
  return cell_anchor(e.grid, p);
}

std::vector<double> embed_point(const GridEmbedding& e,
                                std::span<const double> p) {
  const std::vector<double> anchor = cell_anchor(e.grid, p);
  return project(e.matrix, anchor);
}

FarPointAudit far_point_audit(const CauchyMatrix& matrix, const PointSet& reps,
                              std::span<const double> q,
                              std::optional<double> d0_override) {
  FarPointAudit audit;
  audit.d0 = d0_override.value_or(
      std::ceil(800.0 * matrix.T / static_cast<double>(matrix.k)));
  audit.min_far_image_distance = std::numeric_limits<double>::infinity();
  const std::vector<double> fq = project(matrix, q);
  std::vector<double> image(matrix.k);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (l1_distance(reps.point(i), q) < audit.d0) continue;
    ++audit.far_reps;
    project_into(matrix, reps.point(i), image);
    double dist = 0.0;
    for (std::size_t j = 0; j < image.size(); ++j) {
      dist += std::abs(image[j] - fq[j]);
    }
    audit.min_far_image_distance = std::min(audit.min_far_image_distance, dist);
    if (dist < 4.0) ++audit.violations;
  }
  audit.pass = audit.violations == 0;
  return audit;
}

FarPointAudit far_point_audit(const NetEmbedding& e, std::span<const double> q,
                              std::optional<double> d0_override) {
  return far_point_audit(e.matrix, e.center_coords, q, d0_override);
}

}  // namespace l1fd
