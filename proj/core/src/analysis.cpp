#include "sconv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "json_util.hpp"
#include "sconv/serialize.hpp"

namespace sconv {

namespace {

constexpr double kSigmaZetaTol = 1e-9;
constexpr double kTauZetaTol = 1e-6;
constexpr double kTauZetaDerivativeTol = 1e-5;

}  // namespace

Estimate sigma_main_constant(const SSet& s) {
  const Estimate zs = certified_estimate(zeta_S(s, 3.0, kSigmaZetaTol));
  const Estimate z2 = riemann_zeta(2.0);
  const Estimate z3 = riemann_zeta(3.0);
  const double value = z2.value * zs.value / (2.0 * z3.value);
  const double rel = zs.bound / std::max(zs.value, 1e-300) + z2.bound / z2.value + z3.bound / z3.value;
  return {value, value * rel + 1e-15 * value};
}

double sigma_main_term(const SSet& s, double x) {
  if (x < 1.0) throw DomainError("sigma_main_term needs x >= 1");
  return sigma_main_constant(s).value * x * x;
}

Estimate TauMainTerm::at(double x) const {
  if (x < 2.0) throw DomainError("tau main term needs x >= 2");
  const Estimate z2 = riemann_zeta(2.0);
  const Estimate dz2 = riemann_zeta_derivative(2.0);
  const double shift = std::log(x) + 2.0 * kEulerGamma - 1.0 - 2.0 * dz2.value / z2.value;
  auto main = [&](double zs, double dzs) { return x / z2.value * (zs * shift + 2.0 * dzs); };
  const double value = main(zeta_s.value, zeta_s_derivative.value);
  double bound = 0.0;
  for (const double a : {-1.0, 1.0}) {
    for (const double b : {-1.0, 1.0}) {
      const double corner = main(zeta_s.value + a * zeta_s.bound, zeta_s_derivative.value + b * zeta_s_derivative.bound);
      bound = std::max(bound, std::fabs(corner - value));
    }
  }
  // zeta(2), zeta'(2) errors are below 1e-15 relative.
  return {value, bound + 1e-12 * std::fabs(value)};
}

TauMainTerm tau_main_constants(const SSet& s) {
  return {certified_estimate(zeta_S(s, 2.0, kTauZetaTol)), certified_estimate(zeta_S_derivative(s, 2.0, kTauZetaDerivativeTol))};
}

double tau_main_term(const SSet& s, double x) { return tau_main_constants(s).at(x).value; }

AsymptoticReport asymptotic_report(const SSet& s, DivisorFunction fn, std::uint64_t x_max, unsigned samples,
                                   unsigned workers) {
  if (fn == DivisorFunction::PhiS) throw DomainError("asymptotic_report supports tau_S and sigma_S");
  if (x_max > 10'000'000) throw BoundError("asymptotic_report supports x_max <= 10^7");
  if (x_max < 16) throw DomainError("asymptotic_report needs x_max >= 16");
  if (samples < 2) throw DomainError("asymptotic_report needs at least 2 samples");

  const FunctionTable table =
      fn == DivisorFunction::SigmaS ? sigma_S_table(s, x_max, workers) : tau_S_table(s, x_max, workers);

  const double lo = std::min(100.0, static_cast<double>(x_max) / 2);
  std::vector<std::uint64_t> points;
  for (unsigned i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / (samples - 1);
    auto x = static_cast<std::uint64_t>(std::llround(std::exp(std::log(lo) + t * (std::log(static_cast<double>(x_max)) - std::log(lo)))));
    x = std::min(x, x_max);
    if (points.empty() || x > points.back()) points.push_back(x);
  }
  if (points.back() != x_max) points.push_back(x_max);

  AsymptoticReport report{render(s), fn, {}, 0.0, 0.0};
  std::optional<Estimate> sigma_constant;
  std::optional<TauMainTerm> tau_constants;
  if (fn == DivisorFunction::SigmaS) {
    sigma_constant = sigma_main_constant(s);
  } else {
    tau_constants = tau_main_constants(s);
  }

  Int running = 0;
  std::uint64_t n = 0;
  for (const auto x : points) {
    for (; n < x; ++n) running = checked_add(running, table.values[n + 1]);
    const auto xd = static_cast<double>(x);
    Estimate main{};
    if (sigma_constant) {
      main = {sigma_constant->value * xd * xd, sigma_constant->bound * xd * xd};
    } else {
      main = tau_constants->at(xd);
    }
    const auto partial = static_cast<double>(running);
    report.samples.push_back({x, running, main.value, main.bound, partial / main.value, partial - main.value});
  }

  // Fit ln|R| = c + exponent ln x over samples with nonzero remainder.
  std::vector<std::pair<double, double>> pts;
  for (const auto& smp : report.samples) {
    if (smp.remainder != 0.0) pts.emplace_back(std::log(static_cast<double>(smp.x)), std::log(std::fabs(smp.remainder)));
  }
  if (pts.size() >= 2) {
    double mx = 0, my = 0;
    for (const auto& [u, v] : pts) {
      mx += u;
      my += v;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxx = 0, sxy = 0;
    for (const auto& [u, v] : pts) {
      sxx += (u - mx) * (u - mx);
      sxy += (u - mx) * (v - my);
    }
    report.fitted_exponent = sxx > 0 ? sxy / sxx : 0.0;
    double ss = 0;
    for (const auto& [u, v] : pts) {
      const double r = v - (my + report.fitted_exponent * (u - mx));
      ss += r * r;
    }
    report.fit_residual = std::sqrt(ss / static_cast<double>(pts.size()));
  }
  return report;
}

std::string to_csv(const AsymptoticReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "x,partial_sum,main_term,main_term_bound,ratio,remainder\n";
  for (const auto& s : r.samples) {
    out << s.x << ',' << to_string(s.partial_sum) << ',' << s.main_term << ',' << s.main_term_bound << ',' << s.ratio
        << ',' << s.remainder << '\n';
  }
  return out.str();
}

std::string to_json(const AsymptoticReport& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["sset"] = r.sset;
  j["function"] = name_of(r.function);
  j["fitted_exponent"] = r.fitted_exponent;
  j["fit_residual"] = r.fit_residual;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& s : r.samples) {
    rows.push_back({{"x", s.x},
                    {"partial_sum", int_to_json(s.partial_sum)},
                    {"main_term", s.main_term},
                    {"main_term_bound", s.main_term_bound},
                    {"ratio", s.ratio},
                    {"remainder", s.remainder}});
  }
  j["rows"] = std::move(rows);
  return j.dump();
}

std::optional<unsigned> uniform_least_excluded(const SSet& s) {
  const auto& m = s.multiplicative();
  const auto s_default = m.default_rule().least_excluded();
  if (!s_default) return std::nullopt;
  for (const auto& [p, rule] : m.overrides()) {
    if (rule.least_excluded() != s_default) return std::nullopt;
  }
  return s_default;
}

Estimate sigma_maximal_constant(const SSet& s, double tol) {
  const auto& m = s.multiplicative();
  if (!(tol > 0)) throw DomainError("sigma_maximal_constant needs tol > 0");
  const std::uint64_t last_override = m.overrides().empty() ? 0 : m.overrides().rbegin()->first;
  const auto s_default = m.default_rule().least_excluded();
  const double e_gamma = std::exp(kEulerGamma);

  auto tail_sum = [&](std::uint64_t cutoff) {
    if (!s_default) return 0.0;  // every prime past the overrides is all-in
    return prime_power_tail_bound(static_cast<double>(cutoff), 2.0 * *s_default);
  };
  std::uint64_t cutoff = std::max<std::uint64_t>(1024, last_override);
  while (e_gamma * tail_sum(cutoff) / 2 > tol) {
    cutoff *= 2;
    if (cutoff > kMaxFactorTableLimit) throw BoundError("sigma_maximal_constant: tolerance needs too many primes");
  }
  long double prod = 1.0L;
  for (const auto p : sieve_primes(cutoff)) {
    if (const auto sp = m.rule_at(p).least_excluded()) {
      prod *= 1.0L - std::pow(static_cast<long double>(p), -2.0L * *sp);
    }
  }
  // The tail factor lies in [1 - tail, 1]; report the midpoint.
  const double tail = tail_sum(cutoff);
  const double base = e_gamma * static_cast<double>(prod);
  return {base * (1.0 - tail / 2), base * tail / 2 + 1e-15 * base};
}

Estimate sigma_maximal_constant_uniform(unsigned s) {
  if (s == 0) throw DomainError("threshold s must be >= 1");
  const Estimate z = riemann_zeta(2.0 * s);
  const double e_gamma = std::exp(kEulerGamma);
  return {e_gamma / z.value, e_gamma * z.bound / (z.value * z.value) + 1e-15};
}

WitnessSequence witness_sequence(const SSet& s, double epsilon, unsigned k) {
  const auto& m = s.multiplicative();
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("witness_sequence needs 0 < epsilon < 1");
  if (k < 1 || k > 15) throw DomainError("witness_sequence supports 1 <= k <= 15");

  const auto x = static_cast<std::uint64_t>(std::floor(std::exp(static_cast<double>(k))));
  // Certified lower bound of prod_{p > t} (1 - p^-2): exact factors up to the
  // cutoff times (1 - tail bound) beyond it.
  const std::uint64_t cutoff = std::max<std::uint64_t>(x, 1'000'000);
  const auto primes = sieve_primes(cutoff);
  std::vector<long double> suffix(primes.size() + 1, 1.0L);
  for (std::size_t i = primes.size(); i-- > 0;) {
    const auto p = static_cast<long double>(primes[i]);
    suffix[i] = suffix[i + 1] * (1.0L - 1.0L / (p * p));
  }
  const long double beyond = 1.0L - prime_power_tail_bound(static_cast<double>(cutoff), 2.0);
  // Candidate t values: 1, then each prime; index i means primes[0..i) are <= t.
  std::size_t small_count = 0;
  while (suffix[small_count] * beyond < 1.0L - epsilon) ++small_count;
  const std::uint64_t t = small_count == 0 ? 1 : primes[small_count - 1];

  bool any_all_in_small = false;
  for (std::size_t i = 0; i < small_count; ++i) {
    if (!m.rule_at(primes[i]).least_excluded()) any_all_in_small = true;
  }
  unsigned a = 0;
  if (any_all_in_small) {
    for (a = 1;; ++a) {
      long double prod = 1.0L;
      for (std::size_t i = 0; i < small_count; ++i) prod *= 1.0L - std::pow(static_cast<long double>(primes[i]), -static_cast<long double>(a));
      if (prod >= 1.0L - epsilon) break;
    }
  }

  std::vector<PrimePower> pairs;
  long double log_n = 0.0L;
  long double sigma_over_n = 1.0L;
  long double local_bound = 1.0L;
  for (const auto p : primes) {
    if (p > x) break;
    const auto sp = m.rule_at(p).least_excluded();
    unsigned e = 1;
    if (p <= t) e = sp ? 2 * *sp - 1 : a - 1;
    if (e == 0) continue;
    pairs.push_back({p, e});
    const auto lp = static_cast<long double>(p);
    log_n += e * std::log(lp);
    // sigma_S(p^e) = sum_i [p^{min(i, e-i)} in S] p^i, exact.
    Int numerator = 0;
    Int pi = 1;
    for (unsigned i = 0; i <= e; ++i) {
      if (m.contains_prime_power(p, std::min(i, e - i))) numerator = checked_add(numerator, pi);
      if (i < e) pi = checked_mul(pi, static_cast<Int>(p));
    }
    sigma_over_n *= static_cast<long double>(numerator) / static_cast<long double>(pi);
    if (sp) {
      long double geometric = 0.0L;
      for (unsigned i = 0; i < 2 * *sp; ++i) geometric += std::pow(lp, -static_cast<long double>(i));
      local_bound *= geometric;
    } else {
      local_bound *= 1.0L / (1.0L - 1.0L / lp);
    }
  }
  if (log_n < std::log(16.0L)) throw DomainError("witness_sequence: n_k < 16, log log n_k not usable");
  WitnessSequence w{epsilon, k, t, a, Factorization(std::move(pairs)), static_cast<double>(log_n),
                    static_cast<double>(sigma_over_n), 0.0, static_cast<double>(local_bound)};
  w.ratio = static_cast<double>(sigma_over_n / std::log(log_n));
  return w;
}

double tau_maximal_ratio(std::uint64_t k) {
  if (k < 3) throw DomainError("tau_maximal_ratio needs k >= 3 so that the primorial is >= 16");
  const double kd = static_cast<double>(k);
  // p_k < k (ln k + ln ln k) for k >= 6.
  const auto limit = static_cast<std::uint64_t>(std::max(30.0, kd * (std::log(kd) + std::log(std::log(kd))) + 10));
  const auto primes = sieve_primes(limit);
  if (primes.size() < k) throw ConsistencyError("prime sieve bound for p_k too small");
  long double theta = 0.0L;
  for (std::uint64_t i = 0; i < k; ++i) theta += std::log(static_cast<long double>(primes[i]));
  return static_cast<double>(static_cast<long double>(k) * std::log(2.0L) * std::log(theta) / theta);
}

GronwallCheck gronwall_check(std::uint64_t lo, std::uint64_t hi) {
  if (lo < 16 || hi < lo) throw DomainError("gronwall_check needs 16 <= lo <= hi");
  const DenseTable sigma = ArithFunc(NamedFunction::Sigma).tabulate(hi);
  GronwallCheck out{lo, hi, 0.0, lo, true};
  for (std::uint64_t n = lo; n <= hi; ++n) {
    const auto nd = static_cast<long double>(n);
    const auto r = static_cast<double>(static_cast<long double>(sigma[n]) / (nd * std::log(std::log(nd))));
    if (r > out.max_ratio) {
      out.max_ratio = r;
      out.argmax = n;
    }
  }
  out.below_bound = out.max_ratio < std::exp(kEulerGamma);
  return out;
}

}  // namespace sconv
