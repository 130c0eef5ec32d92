// Acceptance runner: one PASS/FAIL line per criterion.
// Usage: sconv_acceptance [criterion ...]   (no argument runs 1..9)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "sconv/analysis.hpp"
#include "sconv/arith.hpp"
#include "sconv/conv.hpp"
#include "sconv/functions.hpp"
#include "sconv/mobius_zeta.hpp"
#include "sconv/sset.hpp"
#include "sconv/verify.hpp"

using namespace sconv;

namespace {

const std::vector<std::string> kBuiltins = {"N", "1", "Q2", "Q3", "L2", "L3", "P{2,3}"};

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) note << "; ";
      else note.str("");
      ok = false;
      note << what;
    }
  }
};

using Body = std::function<void(Outcome&)>;

struct Criterion {
  int id;
  double time_limit_s;
  Body body;
};

std::string fmt(double v, int prec = 6) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

void c1(Outcome& o) {
  const std::vector<Int> mu2 = {-1, -1, -1, 0, 1, 1, 0, -1, -1, 0};
  for (unsigned a = 1; a <= 10; ++a) {
    if (mu_k_prime_power(2, a) != mu2[a - 1]) o.require(false, "mu_2(p^" + std::to_string(a) + ") mismatch");
  }
  const std::vector<std::pair<unsigned, Int>> mu3 = {{6, 0}, {7, 1}, {8, 2}, {9, 2}, {10, 1}, {11, -1}, {12, -3}, {13, -4}};
  for (const auto& [a, v] : mu3) {
    if (mu_k_prime_power(3, a) != v) o.require(false, "mu_3(p^" + std::to_string(a) + ") mismatch");
  }
  if (o.ok) o.note << "mu_2 a=1..10 and mu_3 a=6..13 exact";
}

void c2(Outcome& o) {
  for (unsigned k : {2U, 3U}) {
    const DenseTable inv = s_inverse(parse_sset("L" + std::to_string(k)), ArithFunc(NamedFunction::One), 4096);
    for (std::uint64_t n = 1; n <= 4096; ++n) {
      if (inv[n] != mu_k_at(k, n)) {
        o.require(false, "L" + std::to_string(k) + " differs at n=" + std::to_string(n));
        break;
      }
    }
  }
  if (o.ok) o.note << "L2, L3 inverses of I equal mu_k on n <= 4096";
}

void report_failures(Outcome& o, const std::string& set, const std::vector<CheckResult>& r) {
  for (const auto& c : r) {
    if (!c.passed && !c.skipped) o.require(false, set + ": " + c.name + " (" + c.detail + ")");
  }
}

void c3(Outcome& o) {
  for (const auto& name : kBuiltins) report_failures(o, name, verify_identities(parse_sset(name), 10'000, 4));
  if (o.ok) o.note << "all identity forms exact on n <= 10^4 for 7 sets";
}

const CheckResult* find(const std::vector<CheckResult>& r, const std::string& name) {
  for (const auto& c : r) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void c4(Outcome& o) {
  std::string q2_witness;
  for (const auto& name : kBuiltins) {
    const SSet s = parse_sset(name);
    const auto wide = verify_algebra(s, 500);
    for (const char* law : {"commutativity", "distributivity", "identity element delta"}) {
      const auto* c = find(wide, law);
      o.require(c && c->passed && c->checked_up_to == 500, name + ": " + law);
    }
    const bool assoc = is_associative(s).holds;
    const auto narrow = verify_algebra(s, 200);
    const auto* a = find(narrow, "associativity");
    if (assoc) {
      o.require(a && a->passed && a->checked_up_to == 200, name + ": associativity on n <= 200");
    } else if (name == "Q2") {
      const bool witnessed = a && !a->passed && a->detail.find("witness") != std::string::npos;
      o.require(witnessed, "Q2: no verified witness");
      if (witnessed) q2_witness = a->detail.substr(0, a->detail.find(';'));
    }
  }
  if (o.ok) o.note << "laws exact on n <= 500, associativity on n <= 200; Q2 " << q2_witness;
}

void c5(Outcome& o) {
  std::vector<std::string> zd;
  for (const auto& name : kBuiltins) {
    const SSet s = parse_sset(name);
    for (std::uint64_t seed : {1ULL, 2ULL}) {
      const DenseTable prod =
          s_convolve_table(s, random_multiplicative(seed), random_multiplicative(seed + 100), 10'000, 4);
      if (const auto bad = multiplicativity_failure(prod, 10'000)) {
        o.require(false, name + ": not multiplicative at (" + std::to_string(bad->first) + "," +
                             std::to_string(bad->second) + ")");
      }
    }
    const DenseTable ts = s_convolve_table(s, ArithFunc(NamedFunction::Tau), ArithFunc(NamedFunction::Sigma), 10'000, 4);
    if (multiplicativity_failure(ts, 10'000)) o.require(false, name + ": tau *_S sigma not multiplicative");

    if (name == "N" || !is_associative(s).holds) continue;
    try {
      const auto z = zero_divisor_pair(s);
      o.require(z && z->verified_up_to == 4 * z->prime * z->prime, name + ": zero divisor pair missing");
      if (z) zd.push_back(name + ":p=" + std::to_string(z->prime));
    } catch (const std::exception& e) {
      o.require(false, name + ": " + e.what());
    }
  }
  o.require(!zero_divisor_pair(parse_sset("N")).has_value(), "N has a zero divisor pair");
  if (o.ok) {
    o.note << "products multiplicative on coprime pairs <= 10^4; zero divisors";
    for (const auto& z : zd) o.note << ' ' << z;
  }
}

void c6(Outcome& o) {
  const std::vector<std::tuple<std::string, DivisorFunction, double>> cases = {
      {"N", DivisorFunction::SigmaS, 1e-3},  {"1", DivisorFunction::SigmaS, 1e-2}, {"Q2", DivisorFunction::SigmaS, 1e-2},
      {"L2", DivisorFunction::SigmaS, 1e-2}, {"N", DivisorFunction::TauS, 1e-2},   {"1", DivisorFunction::TauS, 1e-2},
      {"Q2", DivisorFunction::TauS, 1e-2},   {"L2", DivisorFunction::TauS, 1e-2}};
  double worst = 0.0;
  for (const auto& [name, fn, tol] : cases) {
    const auto r = asymptotic_report(parse_sset(name), fn, 1'000'000, 25, 4);
    const auto& last = r.samples.back();
    const double dev = std::abs(last.ratio - 1.0);
    worst = std::max(worst, dev / tol);
    o.require(last.x == 1'000'000 && dev <= tol, name + " " + std::string(name_of(fn)) + " |ratio-1|=" + fmt(dev));
  }
  if (o.ok) o.note << "worst |ratio-1|/tol = " << fmt(worst, 3) << " at x=10^6 (exponent fits not gated)";
}

void c7(Outcome& o) {
  double worst_constant = 0.0;
  for (const auto& name : kBuiltins) {
    const SSet s = parse_sset(name);
    const auto u = uniform_least_excluded(s);
    if (!u) continue;
    const double diff = std::abs(sigma_maximal_constant(s).value - sigma_maximal_constant_uniform(*u).value);
    worst_constant = std::max(worst_constant, diff);
    o.require(diff <= 1e-8, name + ": constant paths differ by " + fmt(diff, 3));
  }
  std::ostringstream detail;
  for (const char* name : {"N", "1", "L2"}) {
    const SSet s = parse_sset(name);
    const double c = sigma_maximal_constant(s).value;
    double prev = 0.0;
    detail << ' ' << name << " ratio/C:";
    for (unsigned k = 6; k <= 12; ++k) {
      const double r = witness_sequence(s, 0.1, k).ratio;
      detail << (k == 6 ? " " : ",") << fmt(r / c, 5);
      if (k > 6 && r < prev) o.require(false, std::string(name) + ": ratio decreases at k=" + std::to_string(k));
      if (k == 12) o.require(r >= 0.75 * c && r <= 1.05 * c, std::string(name) + ": k=12 ratio outside [0.75C,1.05C]");
      prev = r;
    }
  }
  o.note << " | constant paths max diff " << fmt(worst_constant, 3) << ";" << detail.str();
}

void c8(Outcome& o) {
  const double ln2 = std::numbers::ln2;
  double prev = 1e300;
  for (std::uint64_t k : {100ULL, 1000ULL, 10000ULL, 100000ULL}) {
    const double r = tau_maximal_ratio(k);
    o.note << (k == 100 ? "" : ", ") << "k=" << k << ": " << fmt(r, 5);
    o.require(r < prev, "not strictly decreasing at k=" + std::to_string(k));
    prev = r;
  }
  o.require(std::abs(prev / ln2 - 1.0) <= 0.12, "k=10^5 ratio not within 12% of ln 2");
  if (o.ok) o.note << " (ln 2 = " << fmt(ln2, 5) << ")";
}

void c9(Outcome& o) {
  const auto g = gronwall_check(5041, 1'000'000);
  const double bound = std::exp(kEulerGamma);
  o.require(g.max_ratio < bound, "max ratio " + fmt(g.max_ratio, 10) + " >= e^gamma");
  if (o.ok) o.note << "max sigma(n)/(n ln ln n) = " << fmt(g.max_ratio, 10) << " at n=" << g.argmax << " < " << fmt(bound, 10);
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {{1, 1, c1},   {2, 30, c2},  {3, 300, c3}, {4, 60, c4}, {5, 60, c5},
                                      {6, 120, c6}, {7, 120, c7}, {8, 30, c8},  {9, 60, c9}};
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  if (wanted.empty()) {
    for (const auto& c : all) wanted.push_back(c.id);
  }
  int failures = 0;
  for (int id : wanted) {
    if (id < 1 || id > static_cast<int>(all.size())) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    const Criterion& c = all[id - 1];
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.time_limit_s, "runtime " + fmt(secs, 3) + " s over " + fmt(c.time_limit_s) + " s");
    std::printf("criterion %d: %s (%.2f s / %.0f s) %s\n", c.id, o.ok ? "PASS" : "FAIL", secs, c.time_limit_s,
                o.note.str().c_str());
    std::fflush(stdout);
    if (!o.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
