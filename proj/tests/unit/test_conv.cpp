#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sconv/conv.hpp"
#include "sconv/error.hpp"
#include "sconv/mobius_zeta.hpp"
#include "sconv/verify.hpp"

using namespace sconv;

namespace {

const char* const kBuiltins[] = {"N", "1", "Q2", "Q3", "L2", "L3", "P{2,3}"};
const char* const kAssociative[] = {"N", "1", "L2", "L3", "P{2,3}"};
constexpr std::uint64_t kSeed = 0xC0FFEE;

std::vector<Int> as_vector(const DenseTable& t) { return {t.raw().begin() + 1, t.raw().end()}; }

}  // namespace

TEST(SDivisors, Examples) {
  EXPECT_EQ(s_divisors(parse_sset("1"), 12), (std::vector<std::uint64_t>{1, 3, 4, 12}));
  EXPECT_EQ(s_divisors(parse_sset("L2"), 12), (std::vector<std::uint64_t>{1, 3, 4, 12}));
  EXPECT_EQ(s_divisors(parse_sset("N"), 12), (std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12}));
}

TEST(SDivisors, MatchOracle) {
  for (const char* spec : kBuiltins) {
    const SSet s = parse_sset(spec);
    for (std::uint64_t n = 1; n <= 1000; ++n) {
      ASSERT_EQ(s_divisors(s, n), oracle::s_divisors(n, [&](std::uint64_t m) { return s.contains(m); })) << spec << n;
    }
  }
}

TEST(SConvolveAt, Examples) {
  const ArithFunc one(NamedFunction::One);
  const ArithFunc e(NamedFunction::Identity);
  EXPECT_EQ(s_convolve_at(parse_sset("N"), one, one, 12), 6);
  EXPECT_EQ(s_convolve_at(parse_sset("1"), e, one, 12), 20);
  EXPECT_EQ(s_convolve_at(parse_sset("F{1,2}"), one, one, 16), 4);
}

TEST(SConvolveTable, Examples) {
  const ArithFunc one(NamedFunction::One);
  EXPECT_EQ(as_vector(s_convolve_table(parse_sset("N"), one, one, 6)), (std::vector<Int>{1, 2, 2, 3, 2, 4}));
  EXPECT_EQ(as_vector(s_convolve_table(parse_sset("1"), one, one, 8)), (std::vector<Int>{1, 2, 2, 2, 2, 4, 2, 2}));
  const DenseTable g = random_table(50, kSeed);
  for (const char* spec : kBuiltins) {
    EXPECT_EQ(s_convolve_table(parse_sset(spec), ArithFunc(NamedFunction::Delta), ArithFunc::table(g), 50), g) << spec;
  }
}

TEST(SConvolveTable, AgreesWithPointwiseAndOracle) {
  const DenseTable f = random_table(600, kSeed);
  const DenseTable g = random_table(600, kSeed + 1);
  for (const char* spec : {"N", "1", "Q2", "L2", "P{2,3}", "F{1,6}", "F{2,3}"}) {
    const SSet s = parse_sset(spec);
    const DenseTable t = s_convolve_table(s, f, g, 600);
    const DenseTable t4 = s_convolve_table(s, f, g, 600, 4);
    ASSERT_EQ(t, t4) << spec;
    for (std::uint64_t n = 1; n <= 600; ++n) {
      const Int expected = oracle::s_convolve(
          n, [&](std::uint64_t m) { return s.contains(m); }, [&](std::uint64_t d) { return f[d]; },
          [&](std::uint64_t d) { return g[d]; });
      ASSERT_EQ(t[n], expected) << spec << ' ' << n;
      if (n % 37 == 0) {
        ASSERT_EQ(s_convolve_at(s, ArithFunc::table(f), ArithFunc::table(g), n), expected) << spec << ' ' << n;
      }
    }
  }
}

// Seeded random functions with values in [-9, 9] (seed kSeed).
TEST(AlgebraicLaws, CommutativityDistributivityIdentity) {
  const DenseTable f = random_table(500, kSeed);
  const DenseTable g = random_table(500, kSeed + 1);
  const DenseTable h = random_table(500, kSeed + 2);
  DenseTable gh(500);
  DenseTable delta(500);
  delta[1] = 1;
  for (std::uint64_t n = 1; n <= 500; ++n) gh[n] = g[n] + h[n];
  for (const char* spec : kBuiltins) {
    const SSet s = parse_sset(spec);
    const DenseTable fg = s_convolve_table(s, f, g, 500);
    EXPECT_EQ(fg, s_convolve_table(s, g, f, 500)) << spec;
    const DenseTable lhs = s_convolve_table(s, f, gh, 500);
    const DenseTable fh = s_convolve_table(s, f, h, 500);
    for (std::uint64_t n = 1; n <= 500; ++n) ASSERT_EQ(lhs[n], fg[n] + fh[n]) << spec << ' ' << n;
    EXPECT_EQ(s_convolve_table(s, f, delta, 500), f) << spec;
  }
}

TEST(AlgebraicLaws, AssociativityForAssociativeSets) {
  const DenseTable f = random_table(200, kSeed);
  const DenseTable g = random_table(200, kSeed + 1);
  const DenseTable h = random_table(200, kSeed + 2);
  for (const char* spec : kAssociative) {
    const SSet s = parse_sset(spec);
    EXPECT_EQ(s_convolve_table(s, s_convolve_table(s, f, g, 200), h, 200),
              s_convolve_table(s, f, s_convolve_table(s, g, h, 200), 200))
        << spec;
  }
}

TEST(AlgebraicLaws, Q2ViolationFromWitnessTriple) {
  const SSet s = parse_sset("Q2");
  const auto w = associativity_witness(s);
  ASSERT_TRUE(w.has_value());
  DenseTable f(w->n), g(w->n), h(w->n);
  f[w->e] = 1;
  g[w->d / w->e] = 1;
  h[w->n / w->d] = 1;
  const Int left = s_convolve_table(s, s_convolve_table(s, f, g, w->n), h, w->n)[w->n];
  const Int right = s_convolve_table(s, f, s_convolve_table(s, g, h, w->n), w->n)[w->n];
  EXPECT_NE(left, right);
}

TEST(Multiplicativity, PreservedForMultiplicativeSets) {
  const ArithFunc f = random_multiplicative(kSeed);
  const ArithFunc g = random_multiplicative(kSeed + 1);
  for (const char* spec : kBuiltins) {
    const DenseTable t = s_convolve_table(parse_sset(spec), f, g, 10'000);
    EXPECT_FALSE(multiplicativity_failure(t, 10'000).has_value()) << spec;
  }
}

TEST(Multiplicativity, WitnessForNonMultiplicativeSet) {
  for (const char* spec : kBuiltins) EXPECT_FALSE(mult_preservation_witness(parse_sset(spec), 60).has_value()) << spec;
  const SSet s = parse_sset("F{1,6}");
  const auto w = mult_preservation_witness(s, 100);
  ASSERT_TRUE(w.has_value());
  EXPECT_FALSE(multiplicativity_condition_holds(s, w->m, w->n, w->d, w->e));
  EXPECT_EQ(*w, (MultiplicativityWitness{4, 9, 2, 3}));
  // {1, 2, 3} is not multiplicative: 6 is missing.
  const SSet s123 = parse_sset("F{1,2,3}");
  const auto w123 = mult_preservation_witness(s123, 100);
  ASSERT_TRUE(w123.has_value());
  EXPECT_FALSE(multiplicativity_condition_holds(s123, w123->m, w123->n, w123->d, w123->e));
}

TEST(SInverse, Examples) {
  const ArithFunc one(NamedFunction::One);
  EXPECT_EQ(as_vector(s_inverse(parse_sset("N"), one, 10)), (std::vector<Int>{1, -1, -1, 0, -1, 1, -1, 0, 0, 1}));
  EXPECT_EQ(as_vector(s_inverse(parse_sset("L2"), one, 8)), (std::vector<Int>{1, -1, -1, -1, -1, 1, -1, -1}));
  EXPECT_EQ(as_vector(s_inverse(parse_sset("1"), one, 8)), (std::vector<Int>{1, -1, -1, -1, -1, 1, -1, -1}));
}

TEST(SInverse, MatchesOracleAndComposesToDelta) {
  const ArithFunc f = random_multiplicative(kSeed);
  const DenseTable ft = f.tabulate(1000);
  DenseTable delta(1000);
  delta[1] = 1;
  for (const char* spec : kAssociative) {
    const SSet s = parse_sset(spec);
    const DenseTable g = s_inverse(s, f, 1000);
    const auto expected =
        oracle::s_inverse(1000, [&](std::uint64_t m) { return s.contains(m); }, [&](std::uint64_t n) { return ft[n]; });
    for (std::uint64_t n = 1; n <= 1000; ++n) ASSERT_EQ(g[n], expected[n]) << spec << ' ' << n;
    EXPECT_EQ(s_convolve_table(s, ft, g, 1000), delta) << spec;
    EXPECT_FALSE(multiplicativity_failure(g, 1000).has_value()) << spec;
  }
}

TEST(SInverse, RationalWhenLeadingCoefficientIsNotUnit) {
  DenseTable t(12);
  for (std::uint64_t n = 1; n <= 12; ++n) t[n] = 1;
  t[1] = 2;
  const auto q = s_inverse_rational(parse_sset("N"), ArithFunc::table(t), 12);
  EXPECT_EQ(q[1], Rational(1, 2));
  EXPECT_EQ(q[2], Rational(-1, 4));
  EXPECT_THROW(s_inverse(parse_sset("N"), ArithFunc::table(t), 12), DomainError);
}

TEST(SInverse, Rejections) {
  const ArithFunc one(NamedFunction::One);
  EXPECT_THROW(s_inverse(parse_sset("Q2"), one, 10), DomainError);
  EXPECT_THROW(s_inverse(parse_sset("F{2,3}"), one, 10), DomainError);
  EXPECT_THROW(s_inverse(parse_sset("N"), ArithFunc::indicator(2), 10), DomainError);
}

TEST(ZeroDivisors, Examples) {
  const auto unitary = zero_divisor_pair(parse_sset("1"));
  ASSERT_TRUE(unitary.has_value());
  EXPECT_EQ(unitary->prime, 2U);
  EXPECT_EQ(unitary->verified_up_to, 16U);
  EXPECT_EQ(s_convolve_at(parse_sset("1"), unitary->f, unitary->g, 4), 0);
  EXPECT_FALSE(zero_divisor_pair(parse_sset("N")).has_value());
  EXPECT_EQ(zero_divisor_pair(parse_sset("L2"))->prime, 2U);
  EXPECT_EQ(zero_divisor_pair(parse_sset("P{2,3}"))->prime, 5U);
  EXPECT_EQ(zero_divisor_pair(parse_sset("L3"))->prime, 2U);
  EXPECT_THROW(zero_divisor_pair(parse_sset("Q2")), DomainError);
}

TEST(ArithFunc, NamedRegistry) {
  for (const char* name : {"I", "E", "delta", "mu", "tau", "sigma", "tau_star", "sigma_star", "phi"}) {
    const auto f = named_function_from(name);
    ASSERT_TRUE(f.has_value()) << name;
    EXPECT_EQ(name_of(*f), name);
  }
  EXPECT_FALSE(named_function_from("zeta").has_value());
  const std::vector<std::pair<NamedFunction, std::vector<Int>>> expected = {
      {NamedFunction::Mobius, {1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0}},
      {NamedFunction::Tau, {1, 2, 2, 3, 2, 4, 2, 4, 3, 4, 2, 6}},
      {NamedFunction::Sigma, {1, 3, 4, 7, 6, 12, 8, 15, 13, 18, 12, 28}},
      {NamedFunction::TauStar, {1, 2, 2, 2, 2, 4, 2, 2, 2, 4, 2, 4}},
      {NamedFunction::SigmaStar, {1, 3, 4, 5, 6, 12, 8, 9, 10, 18, 12, 20}},
      {NamedFunction::Phi, {1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4}},
  };
  for (const auto& [f, values] : expected) {
    const ArithFunc af(f);
    EXPECT_EQ(as_vector(af.tabulate(12)), values) << name_of(f);
    for (std::uint64_t n = 1; n <= 12; ++n) EXPECT_EQ(af(n), values[n - 1]) << name_of(f) << n;
  }
  EXPECT_TRUE(ArithFunc(NamedFunction::Identity).is_completely_multiplicative());
  EXPECT_FALSE(ArithFunc(NamedFunction::Tau).is_completely_multiplicative());
  EXPECT_THROW((void)ArithFunc::table(DenseTable(5))(6), BoundError);
}
