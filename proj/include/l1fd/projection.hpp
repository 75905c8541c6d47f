#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "l1fd/point_set.hpp"
#include "l1fd/rng.hpp"

namespace l1fd {

/// Randomized linear map f(u) = Au/T with i.i.d. standard Cauchy entries.
/// T is the expectation of a sum of k Cauchy magnitudes truncated at k/eps:
/// T = (k/pi) * ln(1 + (k/eps)^2).
struct CauchyMatrix {
  std::uint32_t k = 0;  // target dimension (rows)
  std::uint32_t d = 0;  // source dimension (cols)
  double T = 0.0;
  std::uint64_t seed_key = 0;
  std::vector<double> entries;  // row-major k x d

  double entry(std::size_t row, std::size_t col) const {
    return entries[row * d + col];
  }
};

/// Contraction/expansion rates of fresh random maps on a unit-distance pair.
struct DistortionReport {
  double contraction_rate = 0.0;  // ||f(p)-f(q)|| <= (1-eps)*||p-q||
  double expansion_rate = 0.0;    // ||f(p)-f(q)|| >= (1+eps)*||p-q||
  std::size_t pairs_tested = 0;
  double epsilon = 0.0;
  double gamma = 0.0;
};

double projection_scale_factor(std::size_t k, double epsilon);

CauchyMatrix make_projection(std::size_t d, std::size_t k, double epsilon,
                             const RandomSeed& seed);

/// Ax/T. Exactly linear in x.
std::vector<double> project(const CauchyMatrix& m, std::span<const double> x);
void project_into(const CauchyMatrix& m, std::span<const double> x,
                  std::span<double> out);

/// Project every row of `points` at once (GEMM path). Output row-major n x k.
std::vector<double> project_all(const CauchyMatrix& m, const PointSet& points);

/// Target dimension from the Indyk-style formula
/// k = ceil(multiplier * (ln(1/delta))^{1/(epsilon-gamma)}).
/// The multiplier stands in for the paper's uninstantiated 1/zeta(gamma).
std::size_t theorem6_dimension(double delta, double epsilon, double gamma,
                               double multiplier = 1.0);

/// Sample `pairs` fresh matrices against a fixed unit-distance pair and
/// report empirical contraction/expansion rates.
DistortionReport distortion_probe(std::size_t d, std::size_t k, double epsilon,
                                  double gamma, std::size_t pairs,
                                  const RandomSeed& seed);

/// Binary artifact: "L1FD", version u16, k u32, d u32, T f64, seed u64,
/// then k*d little-endian doubles. Round-trips bit-exactly.
void save_matrix(const CauchyMatrix& m, std::ostream& out);
CauchyMatrix load_matrix(std::istream& in);
void save_matrix(const CauchyMatrix& m, const std::string& path);
CauchyMatrix load_matrix(const std::string& path);

}  // namespace l1fd
