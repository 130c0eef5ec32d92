#include "sconv/functions.hpp"

#include <json.hpp>
#include <numeric>
#include <random>
#include <sstream>

#include "sconv/conv.hpp"
#include "sconv/mobius_zeta.hpp"
#include "sconv/parallel.hpp"
#include "json_util.hpp"
#include "sconv/serialize.hpp"

namespace sconv {

namespace {

constexpr std::uint64_t kSelfCheckSeed = 0x5C0417D5EEDULL;
constexpr int kSelfCheckSamples = 32;

Int tau_pointwise(std::uint64_t n) { return ArithFunc(NamedFunction::Tau)(n); }
Int sigma_pointwise(std::uint64_t n) { return ArithFunc(NamedFunction::Sigma)(n); }
Int tau_star_pointwise(std::uint64_t n) { return ArithFunc(NamedFunction::TauStar)(n); }
Int sigma_star_pointwise(std::uint64_t n) { return ArithFunc(NamedFunction::SigmaStar)(n); }

/// Calls body(d, n / d^2) for every d with d^2 | n.
template <class Body>
void for_each_square_divisor(std::uint64_t n, Body body) {
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % (d * d) == 0) body(d, n / (d * d));
  }
}

Int dirichlet_at(const ArithFunc& f, const ArithFunc& g, std::uint64_t n) {
  Int sum = 0;
  for (const auto a : divisors(n)) sum = checked_add(sum, checked_mul(f(a), g(n / a)));
  return sum;
}

Int unitary_at(const ArithFunc& f, const ArithFunc& g, std::uint64_t n) {
  Int sum = 0;
  for (const auto a : divisors(n)) {
    if (std::gcd(a, n / a) == 1) sum = checked_add(sum, checked_mul(f(a), g(n / a)));
  }
  return sum;
}

void require_completely_multiplicative(const ArithFunc& f, const ArithFunc& g) {
  if (!f.is_completely_multiplicative() || !g.is_completely_multiplicative()) {
    throw DomainError("identity needs completely multiplicative f and g");
  }
}

Int direct_value(DivisorFunction fn, const SSet& s, std::uint64_t n) {
  switch (fn) {
    case DivisorFunction::TauS: return tau_S_at(s, n);
    case DivisorFunction::SigmaS: return sigma_S_at(s, n);
    case DivisorFunction::PhiS: return phi_S_at(s, n);
  }
  return 0;
}

void self_check(const FunctionTable& t, const SSet& s) {
  if (t.limit == 0) return;
  std::mt19937_64 rng(kSelfCheckSeed);
  for (int i = 0; i < kSelfCheckSamples; ++i) {
    const std::uint64_t n = 1 + rng() % t.limit;
    if (direct_value(t.name, s, n) != t.values[n]) {
      throw ConsistencyError(std::string(name_of(t.name)) + " table self-check failed at n=" + std::to_string(n));
    }
  }
}

/// out[d^2 m] += weight(d) * base[m] for all d <= sqrt(n_max) with weight(d) != 0.
template <class Weight>
DenseTable square_divisor_sieve(std::uint64_t n_max, const DenseTable& base, Weight weight, unsigned workers) {
  DenseTable out(n_max);
  const std::uint64_t root = isqrt(n_max);
  parallel_ranges(1, n_max + 1, workers, [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t d = 1; d <= root && d * d < hi; ++d) {
      const Int w = weight(d);
      if (w == 0) continue;
      const std::uint64_t sq = d * d;
      for (std::uint64_t m = std::max<std::uint64_t>(1, (lo + sq - 1) / sq); sq * m < hi; ++m) {
        out[sq * m] = checked_add(out[sq * m], checked_mul(w, base[m]));
      }
    }
  });
  return out;
}

}  // namespace

std::string_view name_of(DivisorFunction f) {
  switch (f) {
    case DivisorFunction::TauS: return "tau_S";
    case DivisorFunction::SigmaS: return "sigma_S";
    case DivisorFunction::PhiS: return "phi_S";
  }
  return "?";
}

Int tau_S_at(const SSet& s, std::uint64_t n) { return static_cast<Int>(s_divisors(s, n).size()); }

Int sigma_S_at(const SSet& s, std::uint64_t n) {
  Int sum = 0;
  for (const auto d : s_divisors(s, n)) sum = checked_add(sum, static_cast<Int>(d));
  return sum;
}

Int tau_S_via_identity(const SSet& s, std::uint64_t n) {
  Int via_mu = 0;
  Int via_rho = 0;
  for_each_square_divisor(n, [&](std::uint64_t d, std::uint64_t m) {
    via_mu = checked_add(via_mu, checked_mul(mu_S_at(s, d), tau_pointwise(m)));
    if (s.contains(d)) via_rho = checked_add(via_rho, tau_star_pointwise(m));
  });
  if (via_mu != via_rho) {
    throw ConsistencyError("tau_S identity forms disagree at n=" + std::to_string(n) + ": " + to_string(via_mu) +
                           " vs " + to_string(via_rho));
  }
  return via_mu;
}

Int sigma_S_via_identity(const SSet& s, std::uint64_t n) {
  Int via_mu = 0;
  Int via_rho = 0;
  for_each_square_divisor(n, [&](std::uint64_t d, std::uint64_t m) {
    const Int dd = static_cast<Int>(d);
    via_mu = checked_add(via_mu, checked_mul(checked_mul(mu_S_at(s, d), dd), sigma_pointwise(m)));
    if (s.contains(d)) via_rho = checked_add(via_rho, checked_mul(dd, sigma_star_pointwise(m)));
  });
  if (via_mu != via_rho) {
    throw ConsistencyError("sigma_S identity forms disagree at n=" + std::to_string(n) + ": " + to_string(via_mu) +
                           " vs " + to_string(via_rho));
  }
  return via_mu;
}

Int conv_cm_via_dirichlet(const SSet& s, const ArithFunc& f, const ArithFunc& g, std::uint64_t n) {
  require_completely_multiplicative(f, g);
  Int sum = 0;
  for_each_square_divisor(n, [&](std::uint64_t d, std::uint64_t m) {
    const Int mu = mu_S_at(s, d);
    if (mu == 0) return;
    sum = checked_add(sum, checked_mul(checked_mul(mu, checked_mul(f(d), g(d))), dirichlet_at(f, g, m)));
  });
  return sum;
}

Int conv_cm_via_unitary(const SSet& s, const ArithFunc& f, const ArithFunc& g, std::uint64_t n) {
  require_completely_multiplicative(f, g);
  Int sum = 0;
  for_each_square_divisor(n, [&](std::uint64_t d, std::uint64_t m) {
    if (!s.contains(d)) return;
    sum = checked_add(sum, checked_mul(checked_mul(f(d), g(d)), unitary_at(f, g, m)));
  });
  return sum;
}

Int phi_S_at(const SSet& s, std::uint64_t n) {
  if (n == 0) throw DomainError("phi_S is defined on n >= 1");
  const ArithFunc phi(NamedFunction::Phi);
  Int via_mu = 0;
  Int via_rho = 0;
  for (const auto d : divisors(n)) {
    via_mu = checked_add(via_mu, checked_mul(mu_S_at(s, d), static_cast<Int>(n / d)));
    if (s.contains(d)) via_rho = checked_add(via_rho, phi(n / d));
  }
  if (via_mu != via_rho) {
    throw ConsistencyError("phi_S convolution forms disagree at n=" + std::to_string(n));
  }
  if (n <= kPhiDirectCountLimit) {
    Int count = 0;
    for (std::uint64_t k = 1; k <= n; ++k) {
      if (s.contains(std::gcd(k, n))) ++count;
    }
    if (count != via_mu) throw ConsistencyError("phi_S direct count disagrees at n=" + std::to_string(n));
  }
  return via_mu;
}

FunctionTable tau_S_table(const SSet& s, std::uint64_t n_max, unsigned workers) {
  const DenseTable mu_s = mu_S_table(s, std::max<std::uint64_t>(isqrt(n_max), 1));
  const DenseTable tau = ArithFunc(NamedFunction::Tau).tabulate(n_max);
  FunctionTable t{DivisorFunction::TauS, render(s), n_max,
                  square_divisor_sieve(n_max, tau, [&](std::uint64_t d) { return mu_s[d]; }, workers)};
  self_check(t, s);
  return t;
}

FunctionTable sigma_S_table(const SSet& s, std::uint64_t n_max, unsigned workers) {
  const DenseTable mu_s = mu_S_table(s, std::max<std::uint64_t>(isqrt(n_max), 1));
  const DenseTable sigma = ArithFunc(NamedFunction::Sigma).tabulate(n_max);
  FunctionTable t{DivisorFunction::SigmaS, render(s), n_max,
                  square_divisor_sieve(
                      n_max, sigma, [&](std::uint64_t d) { return checked_mul(mu_s[d], static_cast<Int>(d)); }, workers)};
  self_check(t, s);
  return t;
}

FunctionTable phi_S_table(const SSet& s, std::uint64_t n_max, unsigned workers) {
  const auto in_s = rho_table(s, n_max);
  const DenseTable phi = ArithFunc(NamedFunction::Phi).tabulate(n_max);
  DenseTable out(n_max);
  parallel_ranges(1, n_max + 1, workers, [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t d = 1; d < hi; ++d) {
      if (!in_s[d]) continue;
      for (std::uint64_t e = std::max<std::uint64_t>(1, (lo + d - 1) / d); d * e < hi; ++e) {
        out[d * e] = checked_add(out[d * e], phi[e]);
      }
    }
  });
  FunctionTable t{DivisorFunction::PhiS, render(s), n_max, std::move(out)};
  self_check(t, s);
  return t;
}

std::string to_csv(const FunctionTable& t) {
  std::ostringstream out;
  out << "n,value\n";
  for (std::uint64_t n = 1; n <= t.limit; ++n) out << n << ',' << to_string(t.values[n]) << '\n';
  return out.str();
}

std::string to_json(const FunctionTable& t) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = name_of(t.name);
  j["sset"] = t.sset;
  j["N"] = t.limit;
  auto rows = nlohmann::ordered_json::array();
  for (std::uint64_t n = 1; n <= t.limit; ++n) rows.push_back({n, int_to_json(t.values[n])});
  j["rows"] = std::move(rows);
  return j.dump();
}

}  // namespace sconv
