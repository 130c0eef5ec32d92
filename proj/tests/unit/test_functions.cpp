#include <gtest/gtest.h>

#include <json.hpp>
#include <numeric>

#include "oracles.hpp"
#include "sconv/conv.hpp"
#include "sconv/error.hpp"
#include "sconv/functions.hpp"
#include "sconv/sset.hpp"

using namespace sconv;

namespace {

const char* const kBuiltins[] = {"N", "1", "Q2", "Q3", "L2", "L3", "P{2,3}"};

bool squarefree(std::uint64_t n) { return oracle::k_free(n, 2); }

}  // namespace

TEST(DivisorFunctions, Examples) {
  EXPECT_EQ(tau_S_at(parse_sset("1"), 12), 4);
  EXPECT_EQ(sigma_S_at(parse_sset("1"), 12), 20);
  EXPECT_EQ(tau_S_at(parse_sset("N"), 12), 6);
  EXPECT_EQ(sigma_S_at(parse_sset("N"), 12), 28);
  EXPECT_EQ(tau_S_at(parse_sset("F{1,2}"), 16), 4);
  EXPECT_EQ(sigma_S_at(parse_sset("F{1,2}"), 16), 27);
}

TEST(DivisorFunctions, IdentityExamples) {
  EXPECT_EQ(tau_S_via_identity(parse_sset("1"), 36), 4);
  EXPECT_EQ(sigma_S_via_identity(parse_sset("1"), 4), 5);
  const ArithFunc tau(NamedFunction::Tau);
  const ArithFunc sigma(NamedFunction::Sigma);
  for (std::uint64_t n = 1; n <= 500; ++n) {
    ASSERT_EQ(tau_S_via_identity(parse_sset("N"), n), tau(n));
    ASSERT_EQ(sigma_S_via_identity(parse_sset("N"), n), sigma(n));
  }
  EXPECT_EQ(tau_S_via_identity(parse_sset("L2"), 16), tau_S_at(parse_sset("L2"), 16));
  EXPECT_EQ(sigma_S_via_identity(parse_sset("Q2"), 16), sigma_S_at(parse_sset("Q2"), 16));
}

TEST(DivisorFunctions, IdentitiesMatchEnumerationEverywhere) {
  for (const char* spec : kBuiltins) {
    const SSet s = parse_sset(spec);
    for (std::uint64_t n = 1; n <= 3000; ++n) {
      Int tau = 0;
      Int sigma = 0;
      for (const auto d : oracle::s_divisors(n, [&](std::uint64_t m) { return s.contains(m); })) {
        ++tau;
        sigma += d;
      }
      ASSERT_EQ(tau_S_at(s, n), tau) << spec << ' ' << n;
      ASSERT_EQ(sigma_S_at(s, n), sigma) << spec << ' ' << n;
      ASSERT_EQ(tau_S_via_identity(s, n), tau) << spec << ' ' << n;
      ASSERT_EQ(sigma_S_via_identity(s, n), sigma) << spec << ' ' << n;
    }
  }
}

TEST(CompletelyMultiplicative, BothFormsMatchDirectConvolution) {
  const ArithFunc one(NamedFunction::One);
  const ArithFunc e(NamedFunction::Identity);
  const ArithFunc square = ArithFunc::completely_multiplicative([](std::uint64_t p) { return static_cast<Int>(p * p); });
  const ArithFunc liouville = ArithFunc::completely_multiplicative([](std::uint64_t) { return Int{-1}; });
  const std::pair<ArithFunc, ArithFunc> pairs[] = {{one, one}, {e, one}, {e, e}, {square, liouville}};
  EXPECT_EQ(conv_cm_via_dirichlet(parse_sset("1"), e, e, 4), 1 * 4 + 4 * 1);
  for (const char* spec : {"N", "1", "Q2", "L2", "P{2,3}", "F{1,2}"}) {
    const SSet s = parse_sset(spec);
    for (const auto& [f, g] : pairs) {
      for (std::uint64_t n = 1; n <= 1500; ++n) {
        const Int direct = s_convolve_at(s, f, g, n);
        ASSERT_EQ(conv_cm_via_dirichlet(s, f, g, n), direct) << spec << ' ' << f.label() << ' ' << n;
        ASSERT_EQ(conv_cm_via_unitary(s, f, g, n), direct) << spec << ' ' << f.label() << ' ' << n;
      }
    }
  }
  EXPECT_THROW(conv_cm_via_dirichlet(parse_sset("N"), ArithFunc(NamedFunction::Tau), one, 6), DomainError);
  EXPECT_THROW(conv_cm_via_unitary(parse_sset("N"), one, ArithFunc(NamedFunction::Mobius), 6), DomainError);
}

TEST(Phi, Examples) {
  EXPECT_EQ(phi_S_at(parse_sset("1"), 12), 4);
  EXPECT_EQ(phi_S_at(parse_sset("N"), 12), 12);
  EXPECT_EQ(phi_S_at(parse_sset("L2"), 12), 6);
}

TEST(Phi, TableMatchesDirectCount) {
  for (const char* spec : {"N", "1", "Q2", "L2", "P{2,3}", "F{1,6}"}) {
    const SSet s = parse_sset(spec);
    const FunctionTable t = phi_S_table(s, 2000);
    for (std::uint64_t n = 1; n <= 2000; ++n) {
      Int count = 0;
      for (std::uint64_t k = 1; k <= n; ++k) count += s.contains(std::gcd(k, n)) ? 1 : 0;
      ASSERT_EQ(t.values[n], count) << spec << ' ' << n;
      if (n % 50 == 0) ASSERT_EQ(phi_S_at(s, n), count) << spec << ' ' << n;
    }
  }
}

TEST(Tables, Examples) {
  const std::vector<Int> sigma_n = {1, 3, 4, 7, 6, 12, 8, 15, 13, 18};
  const std::vector<Int> sigma_star = {1, 3, 4, 5, 6, 12, 8, 9, 10, 18};
  const auto t_n = sigma_S_table(parse_sset("N"), 10);
  const auto t_1 = sigma_S_table(parse_sset("1"), 10);
  for (std::uint64_t n = 1; n <= 10; ++n) {
    EXPECT_EQ(t_n.values[n], sigma_n[n - 1]);
    EXPECT_EQ(t_1.values[n], sigma_star[n - 1]);
  }
  const SSet l2 = parse_sset("L2");
  const auto tau = tau_S_table(l2, 100);
  const auto sigma = sigma_S_table(l2, 100);
  for (std::uint64_t n = 1; n <= 100; ++n) {
    EXPECT_EQ(tau.values[n], tau_S_at(l2, n));
    EXPECT_EQ(sigma.values[n], sigma_S_at(l2, n));
  }
}

TEST(Tables, AgreeWithConvolutionAndIgnoreWorkerCount) {
  const ArithFunc one(NamedFunction::One);
  const ArithFunc e(NamedFunction::Identity);
  for (const char* spec : {"N", "1", "Q2", "Q3", "L2", "L3", "P{2,3}", "F{1,6}"}) {
    const SSet s = parse_sset(spec);
    const auto tau = tau_S_table(s, 20'000);
    const auto sigma = sigma_S_table(s, 20'000);
    EXPECT_EQ(tau.values, s_convolve_table(s, one, one, 20'000)) << spec;
    EXPECT_EQ(sigma.values, s_convolve_table(s, e, one, 20'000)) << spec;
    EXPECT_EQ(tau.values, tau_S_table(s, 20'000, 4).values) << spec;
    EXPECT_EQ(sigma.values, sigma_S_table(s, 20'000, 3).values) << spec;
    EXPECT_EQ(phi_S_table(s, 20'000).values, phi_S_table(s, 20'000, 4).values) << spec;
  }
}

TEST(Tables, TauBoundedByTauAndEqualOnSquarefree) {
  const DenseTable tau = ArithFunc(NamedFunction::Tau).tabulate(10'000);
  const DenseTable mu = ArithFunc(NamedFunction::Mobius).tabulate(10'000);
  for (std::uint64_t n = 1; n <= 200; ++n) ASSERT_EQ(mu[n] != 0, squarefree(n)) << n;
  for (const char* spec : {"N", "1", "Q2", "Q3", "L2", "L3", "P{2,3}", "F{1,6}", "F{2,3}"}) {
    const SSet s = parse_sset(spec);
    const auto t = tau_S_table(s, 10'000);
    for (std::uint64_t n = 1; n <= 10'000; ++n) {
      ASSERT_LE(t.values[n], tau[n]) << spec << ' ' << n;
      if (s.contains_one() && mu[n] != 0) ASSERT_EQ(t.values[n], tau[n]) << spec << ' ' << n;
    }
  }
}

TEST(Tables, MultiplicativeForMultiplicativeSets) {
  for (const char* spec : kBuiltins) {
    const SSet s = parse_sset(spec);
    const auto tau = tau_S_table(s, 10'000);
    const auto sigma = sigma_S_table(s, 10'000);
    const auto phi = phi_S_table(s, 10'000);
    for (std::uint64_t m = 2; m * (m + 1) <= 10'000; ++m) {
      for (std::uint64_t n = m + 1; m * n <= 10'000; ++n) {
        if (std::gcd(m, n) != 1) continue;
        ASSERT_EQ(tau.values[m * n], tau.values[m] * tau.values[n]) << spec << ' ' << m << ' ' << n;
        ASSERT_EQ(sigma.values[m * n], sigma.values[m] * sigma.values[n]) << spec << ' ' << m << ' ' << n;
        ASSERT_EQ(phi.values[m * n], phi.values[m] * phi.values[n]) << spec << ' ' << m << ' ' << n;
      }
    }
  }
}

// sigma_S(p^a) / p^a <= 1 + 1/p + ... + p^{-(2 s(p) - 1)}, with equality at a = 2 s(p) - 1.
TEST(Tables, SigmaLocalFactorInequality) {
  for (const char* spec : {"1", "Q2", "Q3", "L2", "L3", "P{2,3}"}) {
    const SSet s = parse_sset(spec);
    for (const std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL}) {
      const auto c = classify_prime(s, p);
      if (!c.least_excluded) continue;
      const unsigned top = 2 * *c.least_excluded - 1;
      Int geometric = 0;  // p^top (1 + ... + p^{-top})
      for (unsigned i = 0; i <= top; ++i) geometric += checked_pow(p, i);
      const unsigned a_max = p == 2 ? 40 : p == 3 ? 40 : p == 5 ? 27 : 22;
      for (unsigned a = 1; a <= a_max; ++a) {
        const auto pa = static_cast<std::uint64_t>(checked_pow(p, a));
        const Int lhs = checked_mul(sigma_S_at(s, pa), checked_pow(p, top));
        const Int rhs = checked_mul(checked_pow(p, a), geometric);
        ASSERT_LE(lhs, rhs) << spec << " p=" << p << " a=" << a;
        if (a == top) ASSERT_EQ(lhs, rhs) << spec << " p=" << p;
      }
    }
  }
}

TEST(Tables, Serialization) {
  const auto t = tau_S_table(parse_sset("1"), 4);
  EXPECT_EQ(to_csv(t), "n,value\n1,1\n2,2\n3,2\n4,2\n");
  const auto j = nlohmann::json::parse(to_json(t));
  EXPECT_EQ(j["name"], "tau_S");
  EXPECT_EQ(j["sset"], "1");
  EXPECT_EQ(j["N"], 4);
  EXPECT_EQ(j["rows"][3][1], 2);
  EXPECT_EQ(j["schema_version"], 1);
}
