#include "sconv/mobius_zeta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "sconv/parallel.hpp"

namespace sconv {

MuKGenerator::MuKGenerator(unsigned k) : k_(k), cache_{1} {
  if (k == 0) throw DomainError("mu_k needs k >= 1");
}

void MuKGenerator::extend_to(unsigned a) const {
  if (a < cache_.size()) return;
  const std::size_t target = std::max<std::size_t>(a + 1, 2 * cache_.size());
  cache_.reserve(target);
  for (std::size_t i = cache_.size(); i < target; ++i) {
    if (i < 2 * static_cast<std::size_t>(k_)) {
      cache_.push_back(-1);
      continue;
    }
    Int next;
    if (__builtin_sub_overflow(cache_[i - 1], cache_[i - k_], &next)) {
      // Values past this exponent are not representable; keep the valid prefix.
      if (a < i) return;
      throw OverflowError("mu_" + std::to_string(k_) + "(p^" + std::to_string(i) + ") exceeds 128 bits");
    }
    cache_.push_back(next);
  }
}

Int MuKGenerator::prime_power(unsigned a) const {
  std::lock_guard lock(mutex_);
  extend_to(a);
  return cache_[a];
}

Int mu_k_prime_power(unsigned k, unsigned a) { return MuKGenerator(k).prime_power(a); }

Int mu_k_at(unsigned k, std::uint64_t n) {
  const MuKGenerator gen(k);
  return eval_multiplicative([&gen](std::uint64_t, unsigned a) { return gen.prime_power(a); }, n);
}

MuKStatistics mu_k_statistics(unsigned k, unsigned a_max) {
  if (a_max > 1'000'000) throw DomainError("mu_k_statistics supports a_max <= 10^6");
  const MuKGenerator gen(k);
  MuKStatistics stats;
  stats.k = k;
  stats.a_max = a_max;
  for (unsigned a = 1; a <= a_max; ++a) {
    Int v;
    try {
      v = gen.prime_power(a);
    } catch (const OverflowError&) {
      stats.overflow_exponent = a;
      break;
    }
    stats.computed_up_to = a;
    stats.first_occurrence.try_emplace(v, a);
    const int sign = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (!stats.sign_runs.empty() && stats.sign_runs.back().first == sign) {
      ++stats.sign_runs.back().second;
    } else {
      stats.sign_runs.emplace_back(sign, 1U);
    }
  }
  return stats;
}

DenseTable mu_S_table(const SSet& s, std::uint64_t n_max, unsigned workers) {
  const FactorTable table(std::max<std::uint64_t>(n_max, 2));
  const auto in_s = rho_table(s, n_max, table);
  const auto mu = tabulate_multiplicative([](std::uint64_t, unsigned a) -> Int { return a == 1 ? -1 : 0; }, n_max, table);
  DenseTable out(n_max);
  parallel_ranges(1, n_max + 1, workers, [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t d = 1; d < hi; ++d) {
      if (!in_s[d]) continue;
      const std::uint64_t e_first = std::max<std::uint64_t>(1, (lo + d - 1) / d);
      for (std::uint64_t e = e_first; e * d < hi; ++e) out[d * e] += mu[e];
    }
  });
  return out;
}

Int mu_S_at(const SSet& s, std::uint64_t n) {
  Int sum = 0;
  for (const auto d : divisors(n)) {
    if (!s.contains(d)) continue;
    const Factorization rest = factorize(n / d);
    const bool squarefree = std::all_of(rest.begin(), rest.end(), [](const PrimePower& pp) { return pp.exponent == 1; });
    if (squarefree) sum += (rest.size() % 2 == 0) ? 1 : -1;
  }
  return sum;
}

int mu_S_at_multiplicative(const MultiplicativeSSet& s, std::uint64_t n) {
  int v = 1;
  for (const auto& [p, a] : factorize(n)) {
    v *= static_cast<int>(s.contains_prime_power(p, a)) - static_cast<int>(s.contains_prime_power(p, a - 1));
    if (v == 0) break;
  }
  return v;
}

namespace {

double crude_tail(double t, double z) { return std::pow(t, 1.0 - z) / (z - 1.0); }

double log_weighted_tail(double t, double z) {
  return std::pow(t, 1.0 - z) * (std::log(t) / (z - 1.0) + 1.0 / ((z - 1.0) * (z - 1.0)));
}

void require_z(double z) {
  if (!(z > 1.0)) throw DomainError("zeta evaluation needs z > 1");
}

/// rho_S on 1..t, or the member list for explicit finite sets.
/// S = {1} given as a multiplicative descriptor.
bool only_one(const SSet& s) {
  if (!s.is_multiplicative_descriptor()) return false;
  const auto& m = s.multiplicative();
  if (!std::holds_alternative<NoExponents>(m.default_rule().variant())) return false;
  for (const auto& [p, rule] : m.overrides()) {
    if (!std::holds_alternative<NoExponents>(rule.variant())) return false;
  }
  return true;
}

std::vector<std::uint8_t> rho_for_sum(const SSet& s, std::uint64_t t) {
  if (const auto b = s.known_bound(); b && t > *b) {
    throw BoundError("tolerance unreachable: needs terms up to " + std::to_string(t) + " but '" + s.name() +
                     "' is only known up to " + std::to_string(*b));
  }
  if (t > kMaxFactorTableLimit) {
    throw BoundError("tolerance needs " + std::to_string(t) + " terms, above the supported " +
                     std::to_string(kMaxFactorTableLimit));
  }
  return rho_table(s, t);
}

/// Weighted truncated sum of rho_S(n) w(n) for n <= t, accumulated from the small end backwards.
template <class Weight>
double weighted_sum(const std::vector<std::uint8_t>& in_s, std::uint64_t t, Weight w) {
  long double sum = 0.0L;
  for (std::uint64_t n = t; n >= 1; --n) {
    if (in_s[n]) sum += w(static_cast<long double>(n));
  }
  return static_cast<double>(sum);
}

long double local_factor(const ExponentRule& rule, long double x) {
  // x = p^{-z}; sum_{j >= 0} [p^j in S] x^j.
  if (std::holds_alternative<AllExponents>(rule.variant())) return 1.0L / (1.0L - x);
  if (std::holds_alternative<NoExponents>(rule.variant())) return 1.0L;
  if (const auto* b = std::get_if<ExponentsBelow>(&rule.variant())) return (1.0L - std::pow(x, b->k)) / (1.0L - x);
  if (const auto* a = std::get_if<ExponentsAtLeast>(&rule.variant())) return 1.0L + std::pow(x, a->e) / (1.0L - x);
  long double sum = 1.0L;
  for (const unsigned j : std::get<FiniteExponents>(rule.variant()).members) sum += std::pow(x, j);
  return sum;
}

EulerProductEvaluation euler_product(const MultiplicativeSSet& m, double z, double tol) {
  const std::uint64_t last_override = m.overrides().empty() ? 0 : m.overrides().rbegin()->first;
  const bool tail_empty = std::holds_alternative<NoExponents>(m.default_rule().variant());
  auto log_tail = [&](double cutoff) {
    if (tail_empty && cutoff >= static_cast<double>(last_override)) return 0.0;
    return prime_power_tail_bound(cutoff, z) / (1.0 - std::pow(cutoff, -z));
  };
  std::uint64_t cutoff = std::max<std::uint64_t>(64, last_override);
  while (log_tail(static_cast<double>(cutoff)) > tol / 2) {
    cutoff *= 2;
    if (cutoff > kMaxFactorTableLimit) throw BoundError("Euler product cutoff beyond supported range");
  }
  long double prod = 1.0L;
  for (const auto p : sieve_primes(cutoff)) {
    prod *= local_factor(m.rule_at(p), std::pow(static_cast<long double>(p), -static_cast<long double>(z)));
  }
  const double tail = log_tail(static_cast<double>(cutoff));
  return {static_cast<double>(prod), cutoff, static_cast<double>(prod) * std::expm1(tail)};
}

}  // namespace

ZetaEvaluation zeta_S(const SSet& s, double z, double tol) {
  require_z(z);
  if (!(tol > 0.0)) throw DomainError("zeta_S needs tol > 0");
  ZetaEvaluation ev;
  ev.z = z;
  const GeneralSSet* g = s.general();
  if (g && !g->bound()) {
    // Explicit finite set: the sum is exact.
    long double sum = 0.0L;
    for (const auto m : g->members()) sum += std::pow(static_cast<long double>(m), -static_cast<long double>(z));
    ev.value = static_cast<double>(sum);
    const auto members = g->members();
    ev.truncation = members.empty() ? 0 : members.back();
    return ev;
  }
  if (only_one(s)) {
    ev.value = 1.0;
    ev.truncation = 1;
    ev.euler = EulerProductEvaluation{1.0, 1, 0.0};
    return ev;
  }
  auto t = static_cast<std::uint64_t>(std::ceil(std::pow(tol * (z - 1.0), -1.0 / (z - 1.0))));
  t = std::max<std::uint64_t>(t, 1);
  while (crude_tail(static_cast<double>(t), z) > tol) ++t;
  const auto in_s = rho_for_sum(s, t);
  ev.truncation = t;
  ev.tail_bound = crude_tail(static_cast<double>(t), z);
  const long double lz = z;
  ev.value = weighted_sum(in_s, t, [lz](long double n) { return std::pow(n, -lz); });
  if (s.is_multiplicative_descriptor()) {
    ev.euler = euler_product(s.multiplicative(), z, tol);
    const double gap = std::fabs(ev.value - ev.euler->value);
    if (gap > ev.tail_bound + ev.euler->bound + 1e-12 * std::fabs(ev.value)) {
      throw ConsistencyError("zeta_S direct sum and Euler product disagree beyond their bounds for '" + s.name() + "'");
    }
  }
  return ev;
}

ZetaEvaluation zeta_S_derivative(const SSet& s, double z, double tol) {
  require_z(z);
  if (!(tol > 0.0)) throw DomainError("zeta_S_derivative needs tol > 0");
  ZetaEvaluation ev;
  ev.z = z;
  const long double lz = z;
  auto term = [lz](long double n) { return -std::log(n) * std::pow(n, -lz); };
  const GeneralSSet* g = s.general();
  if (g && !g->bound()) {
    long double sum = 0.0L;
    const auto members = g->members();
    for (const auto m : members) sum += term(static_cast<long double>(m));
    ev.value = static_cast<double>(sum);
    ev.truncation = members.empty() ? 0 : members.back();
    return ev;
  }
  if (only_one(s)) {
    ev.truncation = 1;
    return ev;
  }
  auto t = static_cast<std::uint64_t>(std::ceil(std::pow(tol * (z - 1.0), -1.0 / (z - 1.0))));
  t = std::max<std::uint64_t>(t, 3);
  while (log_weighted_tail(static_cast<double>(t), z) > tol) t += t / 8 + 1;
  const auto in_s = rho_for_sum(s, t);
  ev.truncation = t;
  ev.tail_bound = log_weighted_tail(static_cast<double>(t), z);
  ev.value = weighted_sum(in_s, t, term);
  return ev;
}

namespace {

/// sum_{n >= 1} n^{-z} (alpha ln n + beta) by Euler-Maclaurin after a short head.
Estimate euler_maclaurin(double z, double alpha, double beta) {
  require_z(z);
  constexpr unsigned kHead = 32;
  constexpr unsigned kTerms = 8;
  // B_2, B_4, ..., B_18
  constexpr std::array<long double, kTerms + 1> kBernoulli{
      1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66, -691.0L / 2730, 7.0L / 6, -3617.0L / 510, 43867.0L / 798};
  const long double lz = z;
  const long double n0 = kHead;
  const long double ln0 = std::log(n0);

  long double sum = 0.0L;
  for (unsigned n = kHead - 1; n >= 1; --n) {
    const long double ln = std::log(static_cast<long double>(n));
    sum += std::pow(static_cast<long double>(n), -lz) * (alpha * ln + beta);
  }
  // Integral of t^{-z}(alpha ln t + beta) over [N, inf).
  const long double zm1 = lz - 1.0L;
  sum += std::pow(n0, 1.0L - lz) * (alpha * (ln0 / zm1 + 1.0L / (zm1 * zm1)) + beta / zm1);
  sum += std::pow(n0, -lz) * (alpha * ln0 + beta) / 2.0L;

  // f^{(j)}(t) = t^{-z-j} (a_j ln t + b_j)
  long double a = alpha;
  long double b = beta;
  long double factorial = 1.0L;
  auto derivative_at = [&](unsigned j) { return std::pow(n0, -lz - j) * (a * ln0 + b); };
  auto step = [&](unsigned j) {
    const long double c = -(lz + j);
    const long double na = c * a;
    const long double nb = c * b + a;
    a = na;
    b = nb;
  };
  long double last_odd = 0.0L;
  for (unsigned k = 1; k <= kTerms; ++k) {
    step(2 * k - 2);
    factorial *= (2.0L * k - 1) * (2.0L * k);
    last_odd = derivative_at(2 * k - 1);
    sum -= kBernoulli[k - 1] / factorial * last_odd;
    step(2 * k - 1);
  }
  // (a, b) now describe f^{(2m)}; the remainder bound needs its sign constant on [N, inf).
  if (a != 0.0L && -b / a > ln0) throw ConsistencyError("Euler-Maclaurin remainder sign condition fails");
  last_odd = std::fabs(last_odd);
  const long double two_pi = 2.0L * 3.14159265358979323846264338327950288L;
  const long double zeta_2m_bound = 1.0L + std::pow(2.0L, 1.0L - 2 * kTerms);
  const long double remainder = 2.0L * zeta_2m_bound / std::pow(two_pi, 2 * kTerms) * last_odd;
  const long double rounding = 64 * std::numeric_limits<double>::epsilon() * std::fabs(sum);
  return {static_cast<double>(sum), static_cast<double>(remainder + rounding)};
}

}  // namespace

Estimate riemann_zeta(double z) { return euler_maclaurin(z, 0.0, 1.0); }

Estimate riemann_zeta_derivative(double z) {
  const Estimate e = euler_maclaurin(z, 1.0, 0.0);
  return {-e.value, e.bound};
}

IdentityCheck verify_mobius_identity(const SSet& s, std::uint64_t n_max) {
  const DenseTable mu_s = mu_S_table(s, n_max);
  const auto in_s = rho_table(s, n_max);
  std::vector<Int> lhs(n_max + 1, 0);
  for (std::uint64_t d = 1; d <= n_max; ++d) {
    if (mu_s[d] == 0) continue;
    for (std::uint64_t m = d; m <= n_max; m += d) lhs[m] += mu_s[d];
  }
  IdentityCheck check;
  check.checked_up_to = n_max;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    if (lhs[n] != static_cast<Int>(in_s[n])) {
      check.passed = false;
      check.first_failure = n;
      break;
    }
  }
  return check;
}

Estimate certified_estimate(const ZetaEvaluation& ev) {
  // The omitted tail has the sign of the terms: positive for zeta_S, negative for zeta_S'.
  const bool negative = ev.value < 0;
  double lo = negative ? ev.value - ev.tail_bound : ev.value;
  double hi = negative ? ev.value : ev.value + ev.tail_bound;
  if (ev.euler) {
    lo = std::max(lo, ev.euler->value);
    hi = std::min(hi, ev.euler->value + ev.euler->bound);
    if (hi < lo) hi = lo;
  }
  return {(lo + hi) / 2, (hi - lo) / 2};
}

SeriesRatioCheck verify_series_ratio(const SSet& s, double z, std::uint64_t truncation) {
  require_z(z);
  if (truncation < 3) throw DomainError("verify_series_ratio needs truncation >= 3");
  const DenseTable mu_s = mu_S_table(s, truncation);
  long double partial = 0.0L;
  for (std::uint64_t n = truncation; n >= 1; --n) {
    if (mu_s[n] != 0) partial += static_cast<long double>(mu_s[n]) * std::pow(static_cast<long double>(n), -static_cast<long double>(z));
  }
  const ZetaEvaluation zs = zeta_S(s, z, 1e-6);
  const Estimate zeta = riemann_zeta(z);
  SeriesRatioCheck out;
  out.partial_sum = static_cast<double>(partial);
  const Estimate zs_est = certified_estimate(zs);
  const double zs_mid = zs_est.value;
  const double zs_err = zs_est.bound;
  const double hi = zs_mid + zs_err;
  out.target = zs_mid / zeta.value;
  out.residual = std::fabs(out.partial_sum - out.target);
  const double t = static_cast<double>(truncation);
  // sum_{n > T} tau(n) n^{-z} via partial summation with sum_{n <= x} tau(n) <= x (ln x + 1).
  const double mu_tail = z * std::pow(t, 1.0 - z) * ((std::log(t) + 1.0) / (z - 1.0) + 1.0 / ((z - 1.0) * (z - 1.0)));
  const double target_err = zs_err / (zeta.value - zeta.bound) + hi * zeta.bound / ((zeta.value - zeta.bound) * zeta.value);
  out.bound = mu_tail + target_err;
  out.within_bound = out.residual <= out.bound;
  return out;
}

}  // namespace sconv
