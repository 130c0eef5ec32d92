#pragma once

// Invariant suites over a set S: the divisor-sum identities, the algebraic
// laws of *_S, and inversion. Each check reports its first counterexample.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sconv/arith_func.hpp"
#include "sconv/sset.hpp"

namespace sconv {

inline constexpr std::uint64_t kVerifyMaxN = 100'000;
/// Seed used by the algebra and inversion suites unless one is given.
inline constexpr std::uint64_t kDefaultVerifySeed = 20240611;
/// The gcd-per-k count of phi_S is quadratic; it is run up to this n only.
inline constexpr std::uint64_t kPhiDirectSuiteLimit = 20'000;

struct CheckResult {
  std::string name;
  bool passed = true;
  bool skipped = false;
  std::uint64_t checked_up_to = 0;
  /// First counterexample on failure, or the reason for a skip.
  std::string detail;
};

enum class Suite { Identities, Algebra, Inversion, All };

std::optional<Suite> suite_from(std::string_view name);
std::string_view name_of(Suite s);

/// Values drawn uniformly from [-9, 9] with a seeded mt19937_64.
DenseTable random_table(std::uint64_t n_max, std::uint64_t seed);
/// Multiplicative function with f(p^a) drawn from [-9, 9] by hashing (seed, p, a).
ArithFunc random_multiplicative(std::uint64_t seed);

/// First coprime pair (m, n), m, n > 1, m n <= limit, with t(mn) != t(m) t(n).
std::optional<std::pair<std::uint64_t, std::uint64_t>> multiplicativity_failure(const DenseTable& t,
                                                                                 std::uint64_t limit);

/// Corrected Moebius identity, both forms of the tau_S and sigma_S identities,
/// the completely multiplicative convolution identities for (I,I), (E,I), (E,E),
/// and the three forms of phi_S, on 1..n_max.
std::vector<CheckResult> verify_identities(const SSet& s, std::uint64_t n_max, unsigned workers = 1);

/// Commutativity, distributivity, identity, associativity (or a verified
/// violation), multiplicativity preservation and zero divisors on 1..n_max.
std::vector<CheckResult> verify_algebra(const SSet& s, std::uint64_t n_max, std::uint64_t seed = kDefaultVerifySeed,
                                        unsigned workers = 1);

/// f *_S s_inverse(f) == delta for f = I and a random multiplicative f, the
/// inverse of a multiplicative function is multiplicative, and for S = L_k
/// the inverse of I matches mu_k.
std::vector<CheckResult> verify_inversion(const SSet& s, std::uint64_t n_max,
                                          std::uint64_t seed = kDefaultVerifySeed, unsigned workers = 1);

std::vector<CheckResult> run_suite(Suite suite, const SSet& s, std::uint64_t n_max,
                                   std::uint64_t seed = kDefaultVerifySeed, unsigned workers = 1);

}  // namespace sconv
