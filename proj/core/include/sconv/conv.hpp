#pragma once

// The S-convolution (f *_S g)(n) = sum_{d | n, gcd(d, n/d) in S} f(d) g(n/d),
// its inverses, and the zero-divisor and multiplicativity constructions.

#include <cstdint>
#include <optional>
#include <vector>

#include "sconv/arith_func.hpp"
#include "sconv/rational.hpp"
#include "sconv/sset.hpp"

namespace sconv {

/// {d : d | n, gcd(d, n/d) in S}, ascending.
std::vector<std::uint64_t> s_divisors(const SSet& s, std::uint64_t n);

/// Pointwise (f *_S g)(n), exact.
Int s_convolve_at(const SSet& s, const ArithFunc& f, const ArithFunc& g, std::uint64_t n);

/// (f *_S g) on 1..n_max by a d * e <= n_max sweep; identical to pointwise.
/// `workers` = 0 picks the hardware concurrency; results never depend on it.
DenseTable s_convolve_table(const SSet& s, const ArithFunc& f, const ArithFunc& g, std::uint64_t n_max,
                            unsigned workers = 1);
/// Same sweep over precomputed tables (both must reach n_max).
DenseTable s_convolve_table(const SSet& s, const DenseTable& f, const DenseTable& g, std::uint64_t n_max,
                            unsigned workers = 1);

/// Inverse of f under *_S on 1..n_max in exact rationals. Requires f(1) != 0,
/// 1 in S and an associative S (DomainError otherwise).
std::vector<Rational> s_inverse_rational(const SSet& s, const ArithFunc& f, std::uint64_t n_max);

/// Integer-valued inverse; throws DomainError when some value is not an integer.
DenseTable s_inverse(const SSet& s, const ArithFunc& f, std::uint64_t n_max);

struct ZeroDivisorPair {
  std::uint64_t prime;
  ArithFunc f;
  ArithFunc g;
  /// (f *_S g)(n) == 0 was checked for 1 <= n <= verified_up_to.
  std::uint64_t verified_up_to;
};

/// f = g = indicator of the least prime p not in S; nullopt when S = N.
/// Requires an associative S.
std::optional<ZeroDivisorPair> zero_divisor_pair(const SSet& s);

struct MultiplicativityWitness {
  std::uint64_t m, n, d, e;
  friend bool operator==(const MultiplicativityWitness&, const MultiplicativityWitness&) = default;
};

/// True iff rho((de, mn/de)) == rho((d, m/d)) rho((e, n/e)); needs d | m, e | n.
bool multiplicativity_condition_holds(const SSet& s, std::uint64_t m, std::uint64_t n, std::uint64_t d,
                                      std::uint64_t e);

/// Violation of the multiplicativity-preservation condition over coprime
/// m, n <= limit (the (M^2, N^2, M, N) construction is tried first).
std::optional<MultiplicativityWitness> mult_preservation_witness(const SSet& s, std::uint64_t limit);

}  // namespace sconv
