#pragma once

// Numerical checks of the divisor-sum asymptotics and the maximal orders of
// sigma_S and tau_S, including the explicit witness sequences.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sconv/functions.hpp"
#include "sconv/mobius_zeta.hpp"
#include "sconv/sset.hpp"

namespace sconv {

inline constexpr double kEulerGamma = 0.57721566490153286;

/// zeta(2) zeta_S(3) / (2 zeta(3)), the coefficient of x^2 in sum_{n<=x} sigma_S(n).
Estimate sigma_main_constant(const SSet& s);
double sigma_main_term(const SSet& s, double x);

/// main(x) = (x / zeta(2)) (zeta_S(2) (ln x + 2 gamma - 1 - 2 zeta'(2)/zeta(2)) + 2 zeta_S'(2)),
/// which is linear in zeta_S(2) and zeta_S'(2); the corners of their error box bound it.
struct TauMainTerm {
  Estimate zeta_s;
  Estimate zeta_s_derivative;
  [[nodiscard]] Estimate at(double x) const;
};
TauMainTerm tau_main_constants(const SSet& s);
double tau_main_term(const SSet& s, double x);

struct AsymptoticSample {
  std::uint64_t x;
  Int partial_sum;
  double main_term;
  double main_term_bound;
  double ratio;
  double remainder;
};

struct AsymptoticReport {
  std::string sset;
  DivisorFunction function;
  std::vector<AsymptoticSample> samples;
  /// Least-squares slope of ln|R(x)| against ln x, and the RMS residual of that fit.
  double fitted_exponent = 0.0;
  double fit_residual = 0.0;
};

/// Partial sums of tau_S or sigma_S at `samples` geometric points up to x_max
/// (<= 10^7) compared with the main term.
AsymptoticReport asymptotic_report(const SSet& s, DivisorFunction fn, std::uint64_t x_max, unsigned samples,
                                   unsigned workers = 1);

/// Columns x, partial_sum, main_term, main_term_bound, ratio, remainder.
std::string to_csv(const AsymptoticReport& r);
std::string to_json(const AsymptoticReport& r);

/// e^gamma prod_{p not all-in} (1 - p^{-2 s(p)}) by a truncated product with a
/// certified tail. Multiplicative S only.
Estimate sigma_maximal_constant(const SSet& s, double tol = 4e-9);
/// e^gamma / zeta(2s).
Estimate sigma_maximal_constant_uniform(unsigned s);
/// The common s(p) when no prime is all-in and every prime shares one threshold.
std::optional<unsigned> uniform_least_excluded(const SSet& s);

struct WitnessSequence {
  double epsilon;
  unsigned k;
  /// Primes <= t get the special exponents; every prime in (t, e^k] appears once.
  std::uint64_t t;
  /// Exponent parameter for all-in primes <= t; 0 when there are none.
  unsigned a;
  Factorization factorization;
  double log_n;
  /// sigma_S(n_k) / n_k from exact local factors.
  double sigma_over_n;
  /// sigma_S(n_k) / (n_k log log n_k).
  double ratio;
  /// prod_{p | n, all-in} (1 - 1/p)^{-1} prod_{p | n, other} (1 + ... + p^{-(2 s(p) - 1)}).
  double local_factor_bound;
};

/// The extremal sequence n_k for 0 < epsilon < 1, 1 <= k <= 15.
WitnessSequence witness_sequence(const SSet& s, double epsilon, unsigned k);

/// k ln 2 ln(theta(p_k)) / theta(p_k), i.e. log tau(n) log log n / log n at the
/// primorial n = p_1 ... p_k. Needs k >= 3 so that n >= 16.
double tau_maximal_ratio(std::uint64_t k);

struct GronwallCheck {
  std::uint64_t lo;
  std::uint64_t hi;
  double max_ratio;
  std::uint64_t argmax;
  bool below_bound;
};

/// max over lo <= n <= hi of sigma(n) / (n ln ln n), compared with e^gamma.
GronwallCheck gronwall_check(std::uint64_t lo, std::uint64_t hi);

}  // namespace sconv
