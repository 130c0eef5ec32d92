#include "sconv/conv.hpp"

#include <numeric>

#include "sconv/parallel.hpp"

namespace sconv {

std::vector<std::uint64_t> s_divisors(const SSet& s, std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (const auto d : divisors(n)) {
    if (s.contains(std::gcd(d, n / d))) out.push_back(d);
  }
  return out;
}

Int s_convolve_at(const SSet& s, const ArithFunc& f, const ArithFunc& g, std::uint64_t n) {
  Int sum = 0;
  for (const auto d : s_divisors(s, n)) sum = checked_add(sum, checked_mul(f(d), g(n / d)));
  return sum;
}

DenseTable s_convolve_table(const SSet& s, const DenseTable& f, const DenseTable& g, std::uint64_t n_max,
                            unsigned workers) {
  if (f.limit() < n_max || g.limit() < n_max) throw BoundError("s_convolve_table: input tables too short");
  // gcd(d, e) <= sqrt(n_max) whenever d * e <= n_max.
  const std::uint64_t gcd_max = isqrt(n_max) + 1;
  const auto in_s = rho_table(s, gcd_max);
  DenseTable out(n_max);
  parallel_ranges(1, n_max + 1, workers, [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t d = 1; d < hi; ++d) {
      if (f[d] == 0) continue;
      const std::uint64_t e_first = std::max<std::uint64_t>(1, (lo + d - 1) / d);
      const std::uint64_t e_last = (hi - 1) / d;
      for (std::uint64_t e = e_first; e <= e_last; ++e) {
        if (g[e] == 0 || !in_s[std::gcd(d, e)]) continue;
        out[d * e] = checked_add(out[d * e], checked_mul(f[d], g[e]));
      }
    }
  });
  return out;
}

DenseTable s_convolve_table(const SSet& s, const ArithFunc& f, const ArithFunc& g, std::uint64_t n_max,
                            unsigned workers) {
  return s_convolve_table(s, f.tabulate(n_max), g.tabulate(n_max), n_max, workers);
}

std::vector<Rational> s_inverse_rational(const SSet& s, const ArithFunc& f, std::uint64_t n_max) {
  if (!s.contains_one()) throw DomainError("s_inverse: 1 is not in S, so delta is not an identity");
  if (const auto v = is_associative(s); !v.holds) {
    throw DomainError("s_inverse: S-convolution for '" + s.name() + "' is not associative (" + v.reason + ")");
  }
  const DenseTable ft = f.tabulate(std::max<std::uint64_t>(n_max, 1));
  if (ft[1] == 0) throw DomainError("s_inverse: f(1) = 0 has no inverse");
  const std::uint64_t gcd_max = isqrt(n_max) + 1;
  const auto in_s = rho_table(s, gcd_max);
  const Rational inv_f1 = Rational(1) / Rational(ft[1]);

  // acc[n] collects sum over S-divisors d < n of g(d) f(n/d); g(n) is final
  // before its contributions are pushed to multiples.
  std::vector<Rational> acc(n_max + 1);
  std::vector<Rational> g(n_max + 1);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    g[n] = n == 1 ? inv_f1 : -(acc[n] * inv_f1);
    if (g[n] == Rational(0)) continue;
    for (std::uint64_t e = 2; e <= n_max / n; ++e) {
      if (ft[e] == 0 || !in_s[std::gcd(n, e)]) continue;
      acc[n * e] += g[n] * Rational(ft[e]);
    }
  }
  return g;
}

DenseTable s_inverse(const SSet& s, const ArithFunc& f, std::uint64_t n_max) {
  const auto q = s_inverse_rational(s, f, n_max);
  DenseTable out(n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    if (!q[n].is_integer()) {
      throw DomainError("s_inverse: value at n=" + std::to_string(n) + " is " + to_string(q[n]) +
                        ", not an integer; use s_inverse_rational");
    }
    out[n] = q[n].num();
  }
  return out;
}

std::optional<ZeroDivisorPair> zero_divisor_pair(const SSet& s) {
  if (const auto v = is_associative(s); !v.holds) {
    throw DomainError("zero_divisor_pair: S-convolution for '" + s.name() + "' is not associative");
  }
  std::optional<std::uint64_t> prime;
  if (s.is_multiplicative_descriptor()) {
    // Upward closure makes "S != N" equivalent to some prime p itself being excluded.
    const auto& m = s.multiplicative();
    for (const auto& [q, rule] : m.overrides()) {
      if (!rule.contains(1)) {
        prime = q;
        break;
      }
    }
    if (!m.default_rule().contains(1)) {
      std::uint64_t q = 2;
      while (!is_prime(q) || m.overrides().contains(q)) ++q;
      if (!prime || q < *prime) prime = q;
    }
  } else {
    const std::uint64_t horizon = s.general()->verdict_horizon();
    for (std::uint64_t q = 2; q <= horizon && !prime; ++q) {
      if (is_prime(q) && !s.contains(q)) prime = q;
    }
  }
  if (!prime) return std::nullopt;
  const std::uint64_t p = *prime;
  const std::uint64_t limit = 4 * p * p;
  ZeroDivisorPair pair{p, ArithFunc::indicator(p), ArithFunc::indicator(p), limit};
  DenseTable padded(limit);
  padded[p] = 1;
  const DenseTable product = s_convolve_table(s, padded, padded, limit);
  for (std::uint64_t n = 1; n <= limit; ++n) {
    if (product[n] != 0) {
      throw ConsistencyError("zero divisor check failed at n=" + std::to_string(n) + " for p=" + std::to_string(p));
    }
  }
  return pair;
}

bool multiplicativity_condition_holds(const SSet& s, std::uint64_t m, std::uint64_t n, std::uint64_t d,
                                      std::uint64_t e) {
  if (d == 0 || e == 0 || m % d != 0 || n % e != 0) throw DomainError("multiplicativity condition needs d | m, e | n");
  const std::uint64_t de = d * e;
  const std::uint64_t mn = m * n;
  const bool lhs = s.contains(std::gcd(de, mn / de));
  const bool rhs = s.contains(std::gcd(d, m / d)) && s.contains(std::gcd(e, n / e));
  return lhs == rhs;
}

std::optional<MultiplicativityWitness> mult_preservation_witness(const SSet& s, std::uint64_t limit) {
  if (!s.is_multiplicative_descriptor()) {
    const auto mv = is_multiplicative(s);
    if (mv.witness) {
      const auto [a, b] = *mv.witness;
      try {
        const MultiplicativityWitness w{a * a, b * b, a, b};
        if (!multiplicativity_condition_holds(s, w.m, w.n, w.d, w.e)) return w;
      } catch (const BoundError&) {
      }
    }
  }
  for (std::uint64_t m = 1; m <= limit; ++m) {
    const auto dm = divisors(m);
    for (std::uint64_t n = 1; n <= limit; ++n) {
      if (std::gcd(m, n) != 1) continue;
      const auto dn = divisors(n);
      for (const auto d : dm) {
        for (const auto e : dn) {
          if (!multiplicativity_condition_holds(s, m, n, d, e)) return MultiplicativityWitness{m, n, d, e};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace sconv
