#pragma once

#include <cstddef>
#include <span>

#include "l1fd/rng.hpp"

namespace l1fd {

/// Running sums over k i.i.d. standard Cauchy draws:
/// s = sum |X_j|, s_tilde = sum |X_j|^{1/2}.
/// Satisfies s <= s_tilde^2 <= k*s for any input (Holder).
struct SumStats {
  double s = 0.0;
  double s_tilde = 0.0;
  std::size_t k = 0;
};

/// Inverse CDF of the standard Cauchy distribution: tan(pi*(u - 1/2)).
/// Requires u in the open interval (0,1).
double cauchy_inverse_cdf(double u);

/// One standard Cauchy draw from the stream.
double sample_cauchy(CounterRng& rng);

/// Monte-Carlo mean of |X|^{1/2} over n draws. Converges to sqrt(2),
/// but the summand has infinite variance, so convergence is slower
/// than the usual sqrt(n) rate.
double estimate_abs_sqrt_moment(std::size_t n, const RandomSeed& seed);

/// Upper bound 2/beta on E[exp(-beta*|X|^{1/2})], valid for beta > 1.
double mgf_analytic_bound(double beta);

/// Monte-Carlo mean of exp(-beta*|X|^{1/2}) over n draws (beta > 0).
double estimate_mgf(double beta, std::size_t n, const RandomSeed& seed);

/// Exact value Q(beta) = (2/pi) * int_0^inf exp(-beta*sqrt(x))/(1+x^2) dx
/// by adaptive quadrature; independent cross-check for estimate_mgf.
double mgf_quadrature(double beta);

/// Tail bound min(1, (10/D)^k) on Pr[S_tilde <= E[S_tilde]/D], D > 1.
double tail_analytic_bound(double D, std::size_t k);

/// Tighter proof-level value min over beta of (2/beta)^k * e^{sqrt2*beta*k/D}
/// evaluated at beta = D, i.e. (2 e^{sqrt2/D} / D)^k, clamped to 1.
/// Reported alongside the stated bound, never asserted.
double tail_proof_level_value(double D, std::size_t k);

/// Fraction of trials in which sum_{j<=k} |X_j|^{1/2} <= sqrt(2)*k/D.
double estimate_tail_probability(double D, std::size_t k, std::size_t trials,
                                 const RandomSeed& seed);

/// Closed-form Pr[|X|^{1/2} <= sqrt(2)/D] = (2/pi) * atan(2/D^2);
/// exact oracle for the k = 1 tail probability.
double tail_closed_form_k1(double D);

/// True iff sum|v| <= (sum sqrt|v|)^2 <= k*sum|v| for the given values.
/// Holds for every input up to floating-point round-off.
bool check_norm_sandwich(std::span<const double> values);

SumStats sum_stats_of(std::span<const double> values);

}  // namespace l1fd
