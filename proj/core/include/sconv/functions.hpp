#pragma once

// tau_S, sigma_S and phi_S: direct enumeration, the d^2-identities, and
// bulk sieves.

#include <cstdint>
#include <string>

#include "sconv/arith_func.hpp"
#include "sconv/sset.hpp"

namespace sconv {

enum class DivisorFunction { TauS, SigmaS, PhiS };

std::string_view name_of(DivisorFunction f);

struct FunctionTable {
  DivisorFunction name;
  /// Canonical spec of the set the table was built for.
  std::string sset;
  std::uint64_t limit;
  DenseTable values;
};

/// Number of S-divisors of n.
Int tau_S_at(const SSet& s, std::uint64_t n);
/// Sum of S-divisors of n.
Int sigma_S_at(const SSet& s, std::uint64_t n);

/// tau_S(n) from sum_{d^2 | n} mu_S(d) tau(n/d^2) and sum_{d^2 | n} rho_S(d) tau*(n/d^2);
/// throws ConsistencyError if the two disagree.
Int tau_S_via_identity(const SSet& s, std::uint64_t n);
/// sigma_S(n) from the analogous pair of identities with weight d.
Int sigma_S_via_identity(const SSet& s, std::uint64_t n);

/// (f *_S g)(n) = sum_{d^2 | n} mu_S(d) f(d) g(d) (f * g)(n/d^2) for completely
/// multiplicative f, g (DomainError otherwise); * is Dirichlet convolution.
Int conv_cm_via_dirichlet(const SSet& s, const ArithFunc& f, const ArithFunc& g, std::uint64_t n);
/// Same with rho_S(d) and the unitary convolution of f and g.
Int conv_cm_via_unitary(const SSet& s, const ArithFunc& f, const ArithFunc& g, std::uint64_t n);

/// Largest n for which phi_S_at performs the gcd-per-k direct count.
inline constexpr std::uint64_t kPhiDirectCountLimit = 1'000'000;

/// #{k <= n : gcd(k, n) in S}; cross-checked against (mu_S * E)(n) and (rho_S * phi)(n).
Int phi_S_at(const SSet& s, std::uint64_t n);

/// Bulk tables. Each build re-derives 32 seeded pseudo-random entries by
/// direct enumeration and throws ConsistencyError on any mismatch.
FunctionTable tau_S_table(const SSet& s, std::uint64_t n_max, unsigned workers = 1);
FunctionTable sigma_S_table(const SSet& s, std::uint64_t n_max, unsigned workers = 1);
FunctionTable phi_S_table(const SSet& s, std::uint64_t n_max, unsigned workers = 1);

/// "n,value" rows with a header line.
std::string to_csv(const FunctionTable& t);
/// {"schema_version", "name", "sset", "N", "rows": [[n, value], ...]}.
std::string to_json(const FunctionTable& t);

}  // namespace sconv
