#include "l1fd/cauchy_stats.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace l1fd {

namespace {
constexpr double kPi = std::numbers::pi;
}

double cauchy_inverse_cdf(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::invalid_argument("cauchy_inverse_cdf: u must be in (0,1)");
  }
  return std::tan(kPi * (u - 0.5));
}

double sample_cauchy(CounterRng& rng) {
  return std::tan(kPi * (rng.next_uniform_open() - 0.5));
}

double estimate_abs_sqrt_moment(std::size_t n, const RandomSeed& seed) {
  if (n < 1) throw std::invalid_argument("estimate_abs_sqrt_moment: n >= 1");
  CounterRng rng(seed);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += std::sqrt(std::abs(sample_cauchy(rng)));
  }
  return sum / static_cast<double>(n);
}

double mgf_analytic_bound(double beta) {
  if (!(beta > 1.0)) {
    throw std::invalid_argument("mgf_analytic_bound: beta must be > 1");
  }
  return 2.0 / beta;
}

double estimate_mgf(double beta, std::size_t n, const RandomSeed& seed) {
  if (!(beta > 0.0)) throw std::invalid_argument("estimate_mgf: beta > 0");
  if (n < 1) throw std::invalid_argument("estimate_mgf: n >= 1");
  CounterRng rng(seed);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += std::exp(-beta * std::sqrt(std::abs(sample_cauchy(rng))));
  }
  return sum / static_cast<double>(n);
}

namespace {

// Adaptive Simpson on f over [a,b].
double simpson(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adapt(const F& f, double a, double m, double b, double fa, double fm,
             double fb, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(fa, flm, fm, a, m);
  const double right = simpson(fm, frm, fb, m, b);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adapt(f, a, lm, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
         adapt(f, m, rm, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  return adapt(f, a, m, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 48);
}

}  // namespace

double mgf_quadrature(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("mgf_quadrature: beta > 0");
  // Substitute x = tan(theta): (2/pi) * int_0^{pi/2} exp(-beta*sqrt(tan t)) dt.
  auto f = [beta](double t) {
    if (t >= kPi / 2) return 0.0;
    return std::exp(-beta * std::sqrt(std::tan(t)));
  };
  return (2.0 / kPi) * adaptive_simpson(f, 0.0, kPi / 2, 1e-12);
}

double tail_analytic_bound(double D, std::size_t k) {
  if (!(D > 1.0)) throw std::invalid_argument("tail_analytic_bound: D > 1");
  if (k < 1) throw std::invalid_argument("tail_analytic_bound: k >= 1");
  return std::min(1.0, std::pow(10.0 / D, static_cast<double>(k)));
}

double tail_proof_level_value(double D, std::size_t k) {
  if (!(D > 1.0)) throw std::invalid_argument("tail_proof_level_value: D > 1");
  const double per = (2.0 / D) * std::exp(std::numbers::sqrt2 / D);
  return std::min(1.0, std::pow(per, static_cast<double>(k)));
}

double estimate_tail_probability(double D, std::size_t k, std::size_t trials,
                                 const RandomSeed& seed) {
  if (!(D > 1.0)) throw std::invalid_argument("estimate_tail_probability: D > 1");
  if (k < 1 || trials < 1) {
    throw std::invalid_argument("estimate_tail_probability: k, trials >= 1");
  }
  CounterRng rng(seed);
  const double threshold = std::numbers::sqrt2 * static_cast<double>(k) / D;
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    double s_tilde = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      s_tilde += std::sqrt(std::abs(sample_cauchy(rng)));
    }
    if (s_tilde <= threshold) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

double tail_closed_form_k1(double D) {
  if (!(D > 1.0)) throw std::invalid_argument("tail_closed_form_k1: D > 1");
  return (2.0 / kPi) * std::atan(2.0 / (D * D));
}

SumStats sum_stats_of(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("sum_stats_of: empty input");
  }
  SumStats st;
  st.k = values.size();
  for (double v : values) {
    const double a = std::abs(v);
    st.s += a;
    st.s_tilde += std::sqrt(a);
  }
  return st;
}

bool check_norm_sandwich(std::span<const double> values) {
  const SumStats st = sum_stats_of(values);
  const double sq = st.s_tilde * st.s_tilde;
  // Tiny relative slack for round-off; the inequality itself is exact.
  const double eps = 1e-12 * (1.0 + sq + st.s);
  return st.s <= sq + eps && sq <= static_cast<double>(st.k) * st.s + eps;
}

}  // namespace l1fd
