#pragma once

// Exact integer primitives: sieves, factorization, divisor enumeration,
// multiplicative evaluation and the Chebyshev theta function.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sconv/int128.hpp"

namespace sconv {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Canonical factorization: primes strictly increasing, exponents >= 1.
/// The empty factorization represents 1.
class Factorization {
 public:
  Factorization() = default;
  /// Validates ordering, primality is assumed from the producer.
  explicit Factorization(std::vector<PrimePower> pairs);

  [[nodiscard]] std::span<const PrimePower> pairs() const { return pairs_; }
  [[nodiscard]] bool empty() const { return pairs_.empty(); }
  [[nodiscard]] std::size_t size() const { return pairs_.size(); }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

  /// Product of p^a; throws OverflowError if it does not fit in 128 bits.
  [[nodiscard]] Int value() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::vector<PrimePower> pairs_;
};

/// Largest limit a FactorTable may be built for (one 32-bit word per index).
inline constexpr std::uint64_t kMaxFactorTableLimit = 100'000'000;

/// Smallest-prime-factor table for 2..limit, built by a linear sieve.
class FactorTable {
 public:
  /// Throws BoundError when limit exceeds kMaxFactorTableLimit.
  explicit FactorTable(std::uint64_t limit);

  [[nodiscard]] std::uint64_t limit() const { return limit_; }
  /// Least prime dividing n, for 2 <= n <= limit.
  [[nodiscard]] std::uint64_t spf(std::uint64_t n) const;
  [[nodiscard]] const std::vector<std::uint64_t>& primes() const { return primes_; }
  [[nodiscard]] bool is_prime(std::uint64_t n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint64_t> primes_;
};

/// Primes <= limit in ascending order; empty when limit < 2.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit);

bool is_prime(std::uint64_t n);

std::uint64_t isqrt(std::uint64_t n);

/// Trial-division factorization. Throws DomainError for n = 0.
Factorization factorize(std::uint64_t n);
/// Table-driven factorization; n must not exceed table.limit().
Factorization factorize(std::uint64_t n, const FactorTable& table);

/// All divisors of n, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::vector<std::uint64_t> divisors(const Factorization& f);

/// Value of a function on prime powers, (p, a) -> f(p^a) with a >= 1.
using PrimePowerFn = std::function<Int(std::uint64_t prime, unsigned exponent)>;

/// Multiplicative extension of ppv: product over the factorization, 1 at n = 1.
Int eval_multiplicative(const PrimePowerFn& ppv, std::uint64_t n);
Int eval_multiplicative(const PrimePowerFn& ppv, const Factorization& f);

/// Table of the multiplicative extension of ppv on 0..n_max (index 0 is 0).
std::vector<Int> tabulate_multiplicative(const PrimePowerFn& ppv, std::uint64_t n_max,
                                         const FactorTable& table);

/// theta(x) = sum of ln p over primes p <= x.
double chebyshev_theta(double x);

/// Certified upper bound for sum_{p > cutoff} p^{-m}, m > 1, from
/// pi(x) < 1.25506 x / ln x and partial summation.
double prime_power_tail_bound(double cutoff, double m);

}  // namespace sconv
