#include "l1fd/projection.hpp"

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "l1fd/cauchy_stats.hpp"

static_assert(std::endian::native == std::endian::little,
              "serialization assumes a little-endian host");

namespace l1fd {

double projection_scale_factor(std::size_t k, double epsilon) {
  const double kk = static_cast<double>(k);
  return (kk / std::numbers::pi) * std::log1p((kk / epsilon) * (kk / epsilon));
}

CauchyMatrix make_projection(std::size_t d, std::size_t k, double epsilon,
                             const RandomSeed& seed) {
  if (d < 1 || k < 1) {
    throw std::invalid_argument("make_projection: dimensions must be >= 1");
  }
  if (!(epsilon > 0.0 && epsilon <= 0.5)) {
    throw std::invalid_argument("make_projection: epsilon in (0, 1/2]");
  }
  CauchyMatrix m;
  m.k = static_cast<std::uint32_t>(k);
  m.d = static_cast<std::uint32_t>(d);
  m.T = projection_scale_factor(k, epsilon);
  CounterRng rng(seed.derive("entries"));
  m.seed_key = rng.key();
  m.entries.resize(k * d);
  for (double& e : m.entries) e = sample_cauchy(rng);
  return m;
}

void project_into(const CauchyMatrix& m, std::span<const double> x,
                  std::span<double> out) {
  if (x.size() != m.d) {
    throw std::invalid_argument("project: input dimension mismatch");
  }
  if (out.size() != m.k) {
    throw std::invalid_argument("project: output dimension mismatch");
  }
  const double inv_t = 1.0 / m.T;
  for (std::size_t i = 0; i < m.k; ++i) {
    const double* row = m.entries.data() + i * m.d;
    double acc = 0.0;
    for (std::size_t j = 0; j < m.d; ++j) acc += row[j] * x[j];
    out[i] = acc * inv_t;
  }
}

std::vector<double> project(const CauchyMatrix& m, std::span<const double> x) {
  std::vector<double> out(m.k);
  project_into(m, x, out);
  return out;
}

std::vector<double> project_all(const CauchyMatrix& m, const PointSet& points) {
  if (points.dim() != m.d) {
    throw std::invalid_argument("project_all: input dimension mismatch");
  }
  using MatRM =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const MatRM> a(m.entries.data(), m.k, m.d);
  Eigen::Map<const MatRM> x(points.data().data(), points.size(), points.dim());
  std::vector<double> out(points.size() * m.k);
  Eigen::Map<MatRM> y(out.data(), points.size(), m.k);
  y.noalias() = (x * a.transpose()) / m.T;
  return out;
}

std::size_t theorem6_dimension(double delta, double epsilon, double gamma,
                               double multiplier) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("theorem6_dimension: delta in (0,1)");
  }
  if (!(gamma > 0.0 && gamma < epsilon && epsilon <= 0.5)) {
    throw std::invalid_argument("theorem6_dimension: need 0 < gamma < epsilon <= 1/2");
  }
  if (!(multiplier > 0.0)) {
    throw std::invalid_argument("theorem6_dimension: multiplier > 0");
  }
  const double k =
      multiplier * std::pow(std::log(1.0 / delta), 1.0 / (epsilon - gamma));
  if (!(k < 1e12)) {
    throw std::overflow_error("theorem6_dimension: target dimension overflow");
  }
  return static_cast<std::size_t>(std::max(1.0, std::ceil(k)));
}

DistortionReport distortion_probe(std::size_t d, std::size_t k, double epsilon,
                                  double gamma, std::size_t pairs,
                                  const RandomSeed& seed) {
  if (!(gamma > 0.0 && gamma < epsilon && epsilon <= 0.5)) {
    throw std::invalid_argument("distortion_probe: need 0 < gamma < epsilon <= 1/2");
  }
  if (pairs < 1 || d < 1 || k < 1) {
    throw std::invalid_argument("distortion_probe: d, k, pairs >= 1");
  }
  // Fixed unit-distance pair p = 0, q = e_1. By 1-stability the image
  // distance of any unit pair is distributed as (sum of k |Cauchy|)/T,
  // so only the first matrix column has to be sampled per fresh map.
  const double T = projection_scale_factor(k, epsilon);
  DistortionReport rep;
  rep.epsilon = epsilon;
  rep.gamma = gamma;
  rep.pairs_tested = pairs;
  std::size_t contracted = 0, expanded = 0;
  CounterRng rng(seed.derive("probe"));
  for (std::size_t p = 0; p < pairs; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += std::abs(sample_cauchy(rng));
    const double image = s / T;
    if (image <= 1.0 - epsilon) ++contracted;
    if (image >= 1.0 + epsilon) ++expanded;
  }
  rep.contraction_rate = static_cast<double>(contracted) / pairs;
  rep.expansion_rate = static_cast<double>(expanded) / pairs;
  return rep;
}

namespace {

template <typename T>
void write_raw(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
void read_raw(std::istream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof v);
}

}  // namespace

void save_matrix(const CauchyMatrix& m, std::ostream& out) {
  out.write("L1FD", 4);
  const std::uint16_t version = 1;
  write_raw(out, version);
  write_raw(out, m.k);
  write_raw(out, m.d);
  write_raw(out, m.T);
  write_raw(out, m.seed_key);
  out.write(reinterpret_cast<const char*>(m.entries.data()),
            static_cast<std::streamsize>(m.entries.size() * sizeof(double)));
  if (!out) throw std::runtime_error("save_matrix: write failed");
}

CauchyMatrix load_matrix(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "L1FD", 4) != 0) {
    throw std::runtime_error("load_matrix: bad magic");
  }
  std::uint16_t version = 0;
  read_raw(in, version);
  if (version != 1) throw std::runtime_error("load_matrix: unknown version");
  CauchyMatrix m;
  read_raw(in, m.k);
  read_raw(in, m.d);
  read_raw(in, m.T);
  read_raw(in, m.seed_key);
  m.entries.resize(static_cast<std::size_t>(m.k) * m.d);
  in.read(reinterpret_cast<char*>(m.entries.data()),
          static_cast<std::streamsize>(m.entries.size() * sizeof(double)));
  if (!in) throw std::runtime_error("load_matrix: truncated file");
  return m;
}

void save_matrix(const CauchyMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_matrix: cannot open " + path);
  save_matrix(m, out);
}

CauchyMatrix load_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_matrix: cannot open " + path);
  return load_matrix(in);
}

}  // namespace l1fd
