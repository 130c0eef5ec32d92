#include "sconv/arith.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sconv {

Factorization::Factorization(std::vector<PrimePower> pairs) : pairs_(std::move(pairs)) {
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (pairs_[i].prime < 2 || pairs_[i].exponent == 0) {
      throw DomainError("factorization entries need prime >= 2 and exponent >= 1");
    }
    if (i > 0 && pairs_[i - 1].prime >= pairs_[i].prime) {
      throw DomainError("factorization primes must be strictly increasing");
    }
  }
}

Int Factorization::value() const {
  Int v = 1;
  for (const auto& [p, a] : pairs_) v = checked_mul(v, checked_pow(static_cast<Int>(p), a));
  return v;
}

FactorTable::FactorTable(std::uint64_t limit) : limit_(limit) {
  if (limit > kMaxFactorTableLimit) {
    throw BoundError("factor table limit " + std::to_string(limit) + " exceeds maximum " +
                     std::to_string(kMaxFactorTableLimit));
  }
  spf_.assign(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(i);
    }
    const std::uint64_t s = spf_[i];
    for (const std::uint64_t p : primes_) {
      if (p > s || p * i > limit) break;
      spf_[p * i] = static_cast<std::uint32_t>(p);
    }
  }
}

std::uint64_t FactorTable::spf(std::uint64_t n) const {
  if (n < 2 || n > limit_) {
    throw BoundError("spf query " + std::to_string(n) + " outside table range [2, " + std::to_string(limit_) + "]");
  }
  return spf_[n];
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  // Odd-only sieve: index i represents 2i + 1.
  const std::uint64_t half = (limit - 1) / 2;
  std::vector<bool> composite(half + 1, false);
  primes.push_back(2);
  for (std::uint64_t i = 1; i <= half; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    primes.push_back(p);
    for (std::uint64_t j = (p * p - 1) / 2; j <= half; j += p) composite[j] = true;
  }
  return primes;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("cannot factorize 0");
  std::vector<PrimePower> pairs;
  auto strip = [&](std::uint64_t p) {
    unsigned a = 0;
    while (n % p == 0) {
      n /= p;
      ++a;
    }
    if (a > 0) pairs.push_back({p, a});
  };
  strip(2);
  for (std::uint64_t p = 3; p <= n / p; p += 2) strip(p);
  if (n > 1) pairs.push_back({n, 1});
  return Factorization(std::move(pairs));
}

Factorization factorize(std::uint64_t n, const FactorTable& table) {
  if (n == 0) throw DomainError("cannot factorize 0");
  if (n > table.limit()) {
    throw BoundError("factorize: " + std::to_string(n) + " exceeds table limit " + std::to_string(table.limit()));
  }
  std::vector<PrimePower> pairs;
  while (n > 1) {
    const std::uint64_t p = table.spf(n);
    unsigned a = 0;
    while (n % p == 0) {
      n /= p;
      ++a;
    }
    pairs.push_back({p, a});
  }
  return Factorization(std::move(pairs));
}

std::vector<std::uint64_t> divisors(const Factorization& f) {
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, a] : f) {
    const std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (unsigned k = 1; k <= a; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) { return divisors(factorize(n)); }

Int eval_multiplicative(const PrimePowerFn& ppv, const Factorization& f) {
  Int v = 1;
  for (const auto& [p, a] : f) {
    v = checked_mul(v, ppv(p, a));
    if (v == 0) break;
  }
  return v;
}

Int eval_multiplicative(const PrimePowerFn& ppv, std::uint64_t n) { return eval_multiplicative(ppv, factorize(n)); }

std::vector<Int> tabulate_multiplicative(const PrimePowerFn& ppv, std::uint64_t n_max, const FactorTable& table) {
  if (n_max > table.limit() && n_max > 1) {
    throw BoundError("tabulate_multiplicative: " + std::to_string(n_max) + " exceeds table limit");
  }
  std::vector<Int> values(n_max + 1, 0);
  if (n_max >= 1) values[1] = 1;
  // rest[n] = n with its smallest prime power stripped, exp[n] = that exponent.
  std::vector<std::uint32_t> rest(n_max + 1, 1);
  std::vector<std::uint8_t> exps(n_max + 1, 0);
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    const std::uint64_t p = table.spf(n);
    const std::uint64_t m = n / p;
    if (m % p == 0) {
      rest[n] = rest[m];
      exps[n] = static_cast<std::uint8_t>(exps[m] + 1);
    } else {
      rest[n] = static_cast<std::uint32_t>(m);
      exps[n] = 1;
    }
    const std::uint64_t r = rest[n];
    values[n] = r == 1 ? ppv(p, exps[n]) : checked_mul(values[n / r], values[r]);
  }
  return values;
}

double chebyshev_theta(double x) {
  if (x < 2.0) return 0.0;
  long double sum = 0.0L;
  for (const std::uint64_t p : sieve_primes(static_cast<std::uint64_t>(std::floor(x)))) {
    sum += std::log(static_cast<long double>(p));
  }
  return static_cast<double>(sum);
}

double prime_power_tail_bound(double cutoff, double m) {
  if (!(m > 1.0)) throw DomainError("prime_power_tail_bound needs exponent m > 1");
  if (cutoff < 2.0) cutoff = 2.0;
  return 1.25506 * m * std::pow(cutoff, 1.0 - m) / ((m - 1.0) * std::log(cutoff));
}

}  // namespace sconv
