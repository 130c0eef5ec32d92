#include "sconv/verify.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "sconv/conv.hpp"
#include "sconv/error.hpp"
#include "sconv/functions.hpp"
#include "sconv/mobius_zeta.hpp"

namespace sconv {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

CheckResult passed(std::string name, std::uint64_t up_to, std::string detail = {}) {
  return {std::move(name), true, false, up_to, std::move(detail)};
}

CheckResult failed(std::string name, std::uint64_t up_to, std::string detail) {
  return {std::move(name), false, false, up_to, std::move(detail)};
}

CheckResult skipped(std::string name, std::string reason) { return {std::move(name), true, true, 0, std::move(reason)}; }

std::string mismatch(std::uint64_t n, Int lhs, Int rhs) {
  return "n=" + std::to_string(n) + ": " + to_string(lhs) + " != " + to_string(rhs);
}

/// First index where the tables differ on 1..n_max.
std::optional<std::uint64_t> first_difference(const DenseTable& a, const DenseTable& b, std::uint64_t n_max) {
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    if (a[n] != b[n]) return n;
  }
  return std::nullopt;
}

CheckResult compare_tables(std::string name, const DenseTable& lhs, const DenseTable& rhs, std::uint64_t n_max) {
  if (const auto n = first_difference(lhs, rhs, n_max)) return failed(std::move(name), n_max, mismatch(*n, lhs[*n], rhs[*n]));
  return passed(std::move(name), n_max);
}

DenseTable delta_table(std::uint64_t n_max) {
  DenseTable t(n_max);
  if (n_max >= 1) t[1] = 1;
  return t;
}

std::uint64_t effective_limit(const SSet& s, std::uint64_t n_max) {
  if (n_max < 1) throw DomainError("verification needs N >= 1");
  if (n_max > kVerifyMaxN) throw BoundError("verification supports N <= " + std::to_string(kVerifyMaxN));
  if (const auto b = s.known_bound(); b && *b < n_max) return *b;
  return n_max;
}

template <typename Fn>
CheckResult pointwise(std::string name, std::uint64_t n_max, const DenseTable& expected, Fn&& value) {
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    Int v = 0;
    try {
      v = value(n);
    } catch (const ConsistencyError& e) {
      return failed(std::move(name), n_max, e.what());
    }
    if (v != expected[n]) return failed(std::move(name), n_max, mismatch(n, v, expected[n]));
  }
  return passed(std::move(name), n_max);
}

CheckResult phi_three_way(const SSet& s, std::uint64_t n_max, unsigned workers) {
  const std::string name = "phi_S three forms";
  const DenseTable via_rho = phi_S_table(s, n_max, workers).values;
  const DenseTable via_mu =
      s_convolve_table(parse_sset("N"), mu_S_table(s, n_max, workers), ArithFunc(NamedFunction::Identity).tabulate(n_max),
                       n_max, workers);
  if (const auto n = first_difference(via_rho, via_mu, n_max)) {
    return failed(name, n_max, "rho_S * phi vs mu_S * E at " + mismatch(*n, via_rho[*n], via_mu[*n]));
  }
  const std::uint64_t direct_limit = std::min(n_max, kPhiDirectSuiteLimit);
  const auto in_s = rho_table(s, direct_limit);
  for (std::uint64_t n = 1; n <= direct_limit; ++n) {
    Int count = 0;
    for (std::uint64_t k = 1; k <= n; ++k) count += in_s[std::gcd(k, n)];
    if (count != via_rho[n]) return failed(name, n_max, "direct count vs rho_S * phi at " + mismatch(n, count, via_rho[n]));
  }
  std::string detail;
  if (direct_limit < n_max) detail = "direct count up to " + std::to_string(direct_limit);
  return passed(name, n_max, detail);
}

}  // namespace

std::optional<Suite> suite_from(std::string_view name) {
  if (name == "identities") return Suite::Identities;
  if (name == "algebra") return Suite::Algebra;
  if (name == "inversion") return Suite::Inversion;
  if (name == "all") return Suite::All;
  return std::nullopt;
}

std::string_view name_of(Suite s) {
  switch (s) {
    case Suite::Identities: return "identities";
    case Suite::Algebra: return "algebra";
    case Suite::Inversion: return "inversion";
    case Suite::All: return "all";
  }
  return "?";
}

DenseTable random_table(std::uint64_t n_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  DenseTable t(n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) t[n] = static_cast<Int>(rng() % 19) - 9;
  return t;
}

ArithFunc random_multiplicative(std::uint64_t seed) {
  return ArithFunc::multiplicative(
      [seed](std::uint64_t p, unsigned a) -> Int {
        if (a == 0) return 1;
        const std::uint64_t h = splitmix(splitmix(seed ^ (p * 0x100000001B3ULL)) + a);
        return static_cast<Int>(h % 19) - 9;
      },
      "random multiplicative (seed " + std::to_string(seed) + ")");
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> multiplicativity_failure(const DenseTable& t,
                                                                                 std::uint64_t limit) {
  limit = std::min(limit, t.limit());
  for (std::uint64_t m = 2; m * (m + 1) <= limit; ++m) {
    for (std::uint64_t n = m + 1; m * n <= limit; ++n) {
      if (std::gcd(m, n) != 1) continue;
      if (t[m * n] != checked_mul(t[m], t[n])) return std::make_pair(m, n);
    }
  }
  return std::nullopt;
}

std::vector<CheckResult> verify_identities(const SSet& s, std::uint64_t n_max, unsigned workers) {
  const std::uint64_t limit = effective_limit(s, n_max);
  std::vector<CheckResult> out;

  const IdentityCheck mobius = verify_mobius_identity(s, limit);
  if (mobius.passed) {
    out.push_back(passed("sum_{d|n} mu_S(d) = rho_S(n)", limit));
  } else {
    out.push_back(failed("sum_{d|n} mu_S(d) = rho_S(n)", limit, "n=" + std::to_string(*mobius.first_failure)));
  }

  const ArithFunc one(NamedFunction::One);
  const ArithFunc e(NamedFunction::Identity);
  const DenseTable tau_direct = s_convolve_table(s, one, one, limit, workers);
  const DenseTable sigma_direct = s_convolve_table(s, e, one, limit, workers);
  out.push_back(pointwise("tau_S identity (both forms)", limit, tau_direct,
                          [&](std::uint64_t n) { return tau_S_via_identity(s, n); }));
  out.push_back(pointwise("sigma_S identity (both forms)", limit, sigma_direct,
                          [&](std::uint64_t n) { return sigma_S_via_identity(s, n); }));

  const std::pair<const char*, std::pair<ArithFunc, ArithFunc>> pairs[] = {
      {"(I,I)", {one, one}}, {"(E,I)", {e, one}}, {"(E,E)", {e, e}}};
  for (const auto& [label, fg] : pairs) {
    const auto& [f, g] = fg;
    const DenseTable direct =
        std::string_view(label) == "(I,I)" ? tau_direct
        : std::string_view(label) == "(E,I)" ? sigma_direct
                                               : s_convolve_table(s, f, g, limit, workers);
    out.push_back(pointwise(std::string("Dirichlet form ") + label, limit, direct,
                            [&](std::uint64_t n) { return conv_cm_via_dirichlet(s, f, g, n); }));
    out.push_back(pointwise(std::string("unitary form ") + label, limit, direct,
                            [&](std::uint64_t n) { return conv_cm_via_unitary(s, f, g, n); }));
  }

  out.push_back(phi_three_way(s, limit, workers));
  return out;
}

std::vector<CheckResult> verify_algebra(const SSet& s, std::uint64_t n_max, std::uint64_t seed, unsigned workers) {
  const std::uint64_t limit = effective_limit(s, n_max);
  const std::string seed_note = "seed " + std::to_string(seed);
  std::vector<CheckResult> out;

  const DenseTable f = random_table(limit, seed);
  const DenseTable g = random_table(limit, seed + 1);
  const DenseTable h = random_table(limit, seed + 2);
  auto conv = [&](const DenseTable& a, const DenseTable& b) { return s_convolve_table(s, a, b, limit, workers); };

  const DenseTable fg = conv(f, g);
  auto comm = compare_tables("commutativity", fg, conv(g, f), limit);
  comm.detail = comm.passed ? seed_note : comm.detail + " (" + seed_note + ")";
  out.push_back(comm);

  DenseTable g_plus_h(limit);
  for (std::uint64_t n = 1; n <= limit; ++n) g_plus_h[n] = g[n] + h[n];
  const DenseTable fh = conv(f, h);
  DenseTable sum(limit);
  for (std::uint64_t n = 1; n <= limit; ++n) sum[n] = checked_add(fg[n], fh[n]);
  auto dist = compare_tables("distributivity", conv(f, g_plus_h), sum, limit);
  dist.detail = dist.passed ? seed_note : dist.detail + " (" + seed_note + ")";
  out.push_back(dist);

  if (s.contains_one()) {
    out.push_back(compare_tables("identity element delta", conv(f, delta_table(limit)), f, limit));
  } else {
    out.push_back(skipped("identity element delta", "1 is not in S; delta is not an identity"));
  }

  const Verdict assoc = is_associative(s);
  if (assoc.holds) {
    auto c = compare_tables("associativity", conv(fg, h), conv(f, conv(g, h)), limit);
    c.detail = c.passed ? seed_note : c.detail + " (" + seed_note + ")";
    out.push_back(c);
  } else if (const auto w = associativity_witness(s)) {
    // Indicators of e, d/e and n/d isolate the single term where the two
    // bracketings differ.
    DenseTable fi(w->n), gi(w->n), hi(w->n);
    fi[w->e] = 1;
    gi[w->d / w->e] = 1;
    hi[w->n / w->d] = 1;
    const Int left = s_convolve_table(s, s_convolve_table(s, fi, gi, w->n), hi, w->n)[w->n];
    const Int right = s_convolve_table(s, fi, s_convolve_table(s, gi, hi, w->n), w->n)[w->n];
    std::ostringstream d;
    d << "witness (n,d,e)=(" << w->n << ',' << w->d << ',' << w->e << "); f=[" << w->e << "], g=[" << w->d / w->e
      << "], h=[" << w->n / w->d << "]: ((f*g)*h)(" << w->n << ")=" << to_string(left) << ", (f*(g*h))(" << w->n
      << ")=" << to_string(right);
    if (left == right) throw ConsistencyError("associativity witness does not separate the bracketings: " + d.str());
    out.push_back(failed("associativity", w->n, d.str()));
  } else {
    out.push_back(failed("associativity", 0, assoc.reason + "; no witness triple found"));
  }

  const MultiplicativityVerdict mult = is_multiplicative(s);
  if (mult.holds) {
    const ArithFunc mf = random_multiplicative(seed);
    const ArithFunc mg = random_multiplicative(seed + 1);
    const DenseTable prod = s_convolve_table(s, mf, mg, limit, workers);
    if (const auto bad = multiplicativity_failure(prod, limit)) {
      out.push_back(failed("multiplicativity preserved", limit,
                           "coprime (" + std::to_string(bad->first) + "," + std::to_string(bad->second) + ") " + seed_note));
    } else {
      out.push_back(passed("multiplicativity preserved", limit, seed_note));
    }
  } else if (const auto w = mult_preservation_witness(s, std::min<std::uint64_t>(limit, 300))) {
    std::ostringstream d;
    d << "S not multiplicative; (m,n,d,e)=(" << w->m << ',' << w->n << ',' << w->d << ',' << w->e << ')';
    out.push_back(failed("multiplicativity preserved", limit, d.str()));
  } else {
    out.push_back(failed("multiplicativity preserved", limit, "S not multiplicative (" + mult.reason + ")"));
  }

  if (assoc.holds) {
    if (const auto z = zero_divisor_pair(s)) {
      out.push_back(passed("zero divisors", z->verified_up_to,
                           "f=g=[" + std::to_string(z->prime) + "], f*f = 0 on n <= " + std::to_string(z->verified_up_to)));
    } else {
      out.push_back(passed("zero divisors", 0, "none (S = N)"));
    }
  } else {
    out.push_back(skipped("zero divisors", "needs an associative S"));
  }
  return out;
}

std::vector<CheckResult> verify_inversion(const SSet& s, std::uint64_t n_max, std::uint64_t seed, unsigned workers) {
  const std::uint64_t limit = effective_limit(s, n_max);
  std::vector<CheckResult> out;
  if (!s.contains_one()) {
    out.push_back(skipped("inverse", "1 is not in S"));
    return out;
  }
  if (const auto v = is_associative(s); !v.holds) {
    out.push_back(skipped("inverse", "S-convolution not associative; inversion rejected"));
    return out;
  }
  const DenseTable delta = delta_table(limit);
  const ArithFunc one(NamedFunction::One);
  const DenseTable inv_one = s_inverse(s, one, limit);
  out.push_back(compare_tables("I *_S inverse(I) = delta", s_convolve_table(s, one.tabulate(limit), inv_one, limit, workers),
                               delta, limit));

  if (s.is_multiplicative_descriptor()) {
    const auto& m = s.multiplicative();
    if (const auto* at_least = std::get_if<ExponentsAtLeast>(&m.default_rule().variant());
        at_least && m.overrides().empty()) {
      const unsigned k = at_least->e;
      DenseTable mu_k(limit);
      for (std::uint64_t n = 1; n <= limit; ++n) mu_k[n] = mu_k_at(k, n);
      out.push_back(compare_tables("inverse(I) = mu_" + std::to_string(k), inv_one, mu_k, limit));
    }
  }

  const ArithFunc f = random_multiplicative(seed);
  const DenseTable inv_f = s_inverse(s, f, limit);
  out.push_back(compare_tables("f *_S inverse(f) = delta (seed " + std::to_string(seed) + ")",
                               s_convolve_table(s, f.tabulate(limit), inv_f, limit, workers), delta, limit));
  const std::uint64_t mult_limit = std::min<std::uint64_t>(limit, 1000);
  if (const auto bad = multiplicativity_failure(inv_f, mult_limit)) {
    out.push_back(failed("inverse of multiplicative f is multiplicative", mult_limit,
                         "coprime (" + std::to_string(bad->first) + "," + std::to_string(bad->second) + ")"));
  } else {
    out.push_back(passed("inverse of multiplicative f is multiplicative", mult_limit));
  }
  return out;
}

std::vector<CheckResult> run_suite(Suite suite, const SSet& s, std::uint64_t n_max, std::uint64_t seed,
                                   unsigned workers) {
  switch (suite) {
    case Suite::Identities: return verify_identities(s, n_max, workers);
    case Suite::Algebra: return verify_algebra(s, n_max, seed, workers);
    case Suite::Inversion: return verify_inversion(s, n_max, seed, workers);
    case Suite::All: {
      auto out = verify_identities(s, n_max, workers);
      auto alg = verify_algebra(s, n_max, seed, workers);
      auto inv = verify_inversion(s, n_max, seed, workers);
      out.insert(out.end(), alg.begin(), alg.end());
      out.insert(out.end(), inv.begin(), inv.end());
      return out;
    }
  }
  return {};
}

}  // namespace sconv
