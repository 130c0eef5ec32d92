#pragma once

// Moebius function of a set S (mu_S = rho_S * mu), the k-full Moebius
// functions mu_k, and numerical zeta_S / zeta_S' with certified tails.

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "sconv/arith_func.hpp"
#include "sconv/sset.hpp"

namespace sconv {

/// Prime-power values mu_k(p^a), independent of p, with a cache that grows
/// geometrically on demand. Extension is serialized; lookups are thread-safe.
class MuKGenerator {
 public:
  explicit MuKGenerator(unsigned k);

  [[nodiscard]] unsigned k() const { return k_; }
  /// mu_k(p^a); throws OverflowError once values leave the 128-bit range.
  [[nodiscard]] Int prime_power(unsigned a) const;

 private:
  void extend_to(unsigned a) const;

  unsigned k_;
  mutable std::mutex mutex_;
  mutable std::vector<Int> cache_;
};

Int mu_k_prime_power(unsigned k, unsigned a);
/// Multiplicative extension of mu_k_prime_power.
Int mu_k_at(unsigned k, std::uint64_t n);

struct MuKStatistics {
  unsigned k = 0;
  unsigned a_max = 0;
  /// Exponents 1..computed_up_to were evaluated.
  unsigned computed_up_to = 0;
  /// First exponent whose value left the 128-bit range, if any.
  std::optional<unsigned> overflow_exponent;
  /// Each value taken, with the least exponent where it first appears.
  std::map<Int, unsigned> first_occurrence;
  /// Maximal runs of constant sign as (sign in {-1,0,1}, length), in order.
  std::vector<std::pair<int, unsigned>> sign_runs;
};

/// Descriptive statistics of mu_k(p^a) for 1 <= a <= a_max (a_max <= 10^6).
MuKStatistics mu_k_statistics(unsigned k, unsigned a_max);

/// mu_S on 1..n_max via the divisor sweep of rho_S * mu.
DenseTable mu_S_table(const SSet& s, std::uint64_t n_max, unsigned workers = 1);
/// Pointwise mu_S(n) = sum_{d | n} rho_S(d) mu(n/d).
Int mu_S_at(const SSet& s, std::uint64_t n);
/// Product over p^a || n of rho_S(p^a) - rho_S(p^{a-1}); always in {-1, 0, 1}.
int mu_S_at_multiplicative(const MultiplicativeSSet& s, std::uint64_t n);

/// A real value with an absolute error bound.
struct Estimate {
  double value = 0.0;
  double bound = 0.0;
};

struct EulerProductEvaluation {
  double value = 0.0;
  /// Primes <= prime_cutoff were multiplied in.
  std::uint64_t prime_cutoff = 0;
  /// Certified: 0 <= true - value <= bound.
  double bound = 0.0;
};

struct ZetaEvaluation {
  double z = 0.0;
  /// Truncated sum over n <= truncation.
  double value = 0.0;
  std::uint64_t truncation = 0;
  /// Certified bound on the omitted tail.
  double tail_bound = 0.0;
  /// Second route, present for multiplicative S (zeta_S only).
  std::optional<EulerProductEvaluation> euler;
};

/// zeta_S(z) = sum rho_S(n) n^{-z} for z > 1, truncated where the crude tail
/// bound T^{1-z}/(z-1) is <= tol. For multiplicative S an Euler product is
/// evaluated too and both routes must agree within their bounds.
ZetaEvaluation zeta_S(const SSet& s, double z, double tol);
/// zeta_S'(z) = -sum rho_S(n) ln n n^{-z}, truncated with the integral tail bound.
ZetaEvaluation zeta_S_derivative(const SSet& s, double z, double tol);

/// Midpoint and half-width of the tightest certified interval for the series:
/// the truncated sum plus its one-sided tail, intersected with the Euler
/// product interval when present.
Estimate certified_estimate(const ZetaEvaluation& ev);

/// Riemann zeta(z), z > 1, via a short sum plus Euler-Maclaurin tail with a
/// certified remainder bound.
Estimate riemann_zeta(double z);
/// zeta'(z), z > 1, same method.
Estimate riemann_zeta_derivative(double z);

struct IdentityCheck {
  bool passed = true;
  std::uint64_t checked_up_to = 0;
  std::optional<std::uint64_t> first_failure;
};

/// sum_{d | n} mu_S(d) == rho_S(n) for all n <= n_max.
IdentityCheck verify_mobius_identity(const SSet& s, std::uint64_t n_max);

struct SeriesRatioCheck {
  double partial_sum = 0.0;
  double target = 0.0;
  double residual = 0.0;
  /// Tail of the mu_S series (|mu_S| <= tau) plus the error in the target.
  double bound = 0.0;
  bool within_bound = false;
};

/// |sum_{n <= T} mu_S(n) n^{-z} - zeta_S(z)/zeta(z)| against its certified bound.
SeriesRatioCheck verify_series_ratio(const SSet& s, double z, std::uint64_t truncation);

}  // namespace sconv
