#pragma once

// Set descriptors S with characteristic function rho_S, the textual spec
// mini-language, and the structural classifications (multiplicativity,
// associativity, per-prime cases).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sconv/arith.hpp"

namespace sconv {

/// Exponent rules deeper than this are rejected when deciding upward-closure.
inline constexpr unsigned kMaxRuleDepth = 64;

/// Horizon used for bound-limited verdicts on explicit finite sets.
inline constexpr std::uint64_t kDefaultVerdictHorizon = 2000;

struct AllExponents {
  friend bool operator==(const AllExponents&, const AllExponents&) = default;
};
struct NoExponents {
  friend bool operator==(const NoExponents&, const NoExponents&) = default;
};
/// j in S iff j < k.
struct ExponentsBelow {
  unsigned k;
  friend bool operator==(const ExponentsBelow&, const ExponentsBelow&) = default;
};
/// j in S iff j >= e.
struct ExponentsAtLeast {
  unsigned e;
  friend bool operator==(const ExponentsAtLeast&, const ExponentsAtLeast&) = default;
};
/// j in S iff j is listed (ascending, each in 1..kMaxRuleDepth).
struct FiniteExponents {
  std::vector<unsigned> members;
  friend bool operator==(const FiniteExponents&, const FiniteExponents&) = default;
};

/// Which exponents j >= 1 of a prime p give p^j in S. p^0 = 1 is always
/// treated as a member (multiplicative sets contain 1).
class ExponentRule {
 public:
  using Variant = std::variant<AllExponents, NoExponents, ExponentsBelow, ExponentsAtLeast, FiniteExponents>;

  static ExponentRule all() { return ExponentRule(AllExponents{}); }
  static ExponentRule none() { return ExponentRule(NoExponents{}); }
  /// Below(1) normalizes to None.
  static ExponentRule below(unsigned k);
  /// AtLeast(1) normalizes to All.
  static ExponentRule at_least(unsigned e);
  /// Empty list normalizes to None; exponents beyond kMaxRuleDepth are rejected.
  static ExponentRule finite(std::vector<unsigned> members);

  [[nodiscard]] const Variant& variant() const { return rule_; }
  [[nodiscard]] bool contains(unsigned j) const;
  /// p^j in S implies p^l in S for all l > j.
  [[nodiscard]] bool upward_closed() const;
  /// Least j >= 1 with p^j not in S; nullopt for All.
  [[nodiscard]] std::optional<unsigned> least_excluded() const;

  friend bool operator==(const ExponentRule&, const ExponentRule&) = default;

 private:
  explicit ExponentRule(Variant v) : rule_(std::move(v)) {}
  Variant rule_;
};

/// S with 1 in S and multiplicative rho_S, given per prime by exponent rules.
class MultiplicativeSSet {
 public:
  MultiplicativeSSet(ExponentRule default_rule, std::map<std::uint64_t, ExponentRule> overrides = {});

  [[nodiscard]] const ExponentRule& default_rule() const { return default_; }
  [[nodiscard]] const std::map<std::uint64_t, ExponentRule>& overrides() const { return overrides_; }
  [[nodiscard]] const ExponentRule& rule_at(std::uint64_t prime) const;

  [[nodiscard]] bool contains_prime_power(std::uint64_t prime, unsigned exponent) const {
    return exponent == 0 || rule_at(prime).contains(exponent);
  }
  [[nodiscard]] bool contains(const Factorization& f) const;
  [[nodiscard]] bool contains(std::uint64_t m) const { return contains(factorize(m)); }

 private:
  ExponentRule default_;
  std::map<std::uint64_t, ExponentRule> overrides_;
};

/// Arbitrary S given by a membership table. When `bound` is set, membership
/// is only known for m <= bound and larger queries are errors. When unset the
/// set is an explicit finite list and every m beyond the table is a non-member.
class GeneralSSet {
 public:
  /// Explicit finite set (the "F{...}" form).
  static GeneralSSet from_members(std::vector<std::uint64_t> members);
  /// Table-backed set known on 1..bound (the "FILE:" form).
  static GeneralSSet with_bound(std::uint64_t bound, const std::vector<std::uint64_t>& members);

  [[nodiscard]] std::optional<std::uint64_t> bound() const { return bound_; }
  [[nodiscard]] bool contains(std::uint64_t m) const;
  /// Largest m for which verdicts are reported (bound, or kDefaultVerdictHorizon).
  [[nodiscard]] std::uint64_t verdict_horizon() const { return bound_.value_or(kDefaultVerdictHorizon); }
  [[nodiscard]] std::vector<std::uint64_t> members() const;

 private:
  GeneralSSet() = default;
  std::optional<std::uint64_t> bound_;
  std::vector<bool> table_;  // index m -> membership, size max_known + 1
};

/// A set S: exactly one of the two descriptor kinds plus a display name.
class SSet {
 public:
  SSet(MultiplicativeSSet s, std::string name) : set_(std::move(s)), name_(std::move(name)) {}
  SSet(GeneralSSet s, std::string name) : set_(std::move(s)), name_(std::move(name)) {}

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] bool is_multiplicative_descriptor() const { return std::holds_alternative<MultiplicativeSSet>(set_); }
  /// Throws DomainError for a GeneralSSet.
  [[nodiscard]] const MultiplicativeSSet& multiplicative() const;
  [[nodiscard]] const GeneralSSet* general() const { return std::get_if<GeneralSSet>(&set_); }

  /// rho_S(m) for m >= 1. Throws BoundError past a GeneralSSet bound.
  [[nodiscard]] bool contains(std::uint64_t m) const;
  [[nodiscard]] bool contains_one() const { return contains(1); }
  /// Largest m for which rho_S is known; nullopt when known everywhere.
  [[nodiscard]] std::optional<std::uint64_t> known_bound() const;

 private:
  std::variant<MultiplicativeSSet, GeneralSSet> set_;
  std::string name_;
};

/// Parses: "N" | "1" | "Q"INT | "L"INT | "P{"INT,...}" | "F{"INT,...}" | "FILE:"path.
SSet parse_sset(std::string_view spec);
/// Canonical spec text; parse_sset(render(S)) reproduces S.
std::string render(const SSet& s);

/// rho_S(m) as 0/1.
inline int rho(const SSet& s, std::uint64_t m) { return s.contains(m) ? 1 : 0; }
/// rho_S on 0..n_max (index 0 is 0).
std::vector<std::uint8_t> rho_table(const SSet& s, std::uint64_t n_max);
std::vector<std::uint8_t> rho_table(const SSet& s, std::uint64_t n_max, const FactorTable& table);

/// A verdict that may only hold up to a checked bound.
struct Verdict {
  bool holds = true;
  /// Set when the verdict was established by exhaustive search up to this value.
  std::optional<std::uint64_t> checked_up_to;
  std::string reason;
};

struct MultiplicativityVerdict : Verdict {
  /// Coprime (m, n) with rho(mn) != rho(m) rho(n).
  std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;
};

MultiplicativityVerdict is_multiplicative(const SSet& s);
MultiplicativityVerdict is_multiplicative(const SSet& s, std::uint64_t horizon);

enum class PrimeCase {
  AllIn,           // (i)
  AllOut,          // (ii)
  Threshold,       // (iii)
  NotUpwardClosed,
};

std::string_view to_string(PrimeCase c);

struct PrimeClassification {
  std::uint64_t prime;
  PrimeCase prime_case;
  /// e(p) in case (iii).
  std::optional<unsigned> threshold;
  /// s(p): least j with p^j not in S; set exactly when the prime is not all-in.
  std::optional<unsigned> least_excluded;
};

/// Throws DomainError for a GeneralSSet; throws DomainError when a finite
/// rule reaches beyond `depth`.
PrimeClassification classify_prime(const SSet& s, std::uint64_t prime, unsigned depth = kMaxRuleDepth);

/// Associativity holds iff S is multiplicative and every prime rule is upward closed.
Verdict is_associative(const SSet& s);

struct AssociativityWitness {
  std::uint64_t n, d, e;
  friend bool operator==(const AssociativityWitness&, const AssociativityWitness&) = default;
};

/// True iff rho((d,n/d)) rho((e,d/e)) == rho((e,n/e)) rho((d/e,n/d)); needs e | d | n.
bool associativity_condition_holds(const SSet& s, std::uint64_t n, std::uint64_t d, std::uint64_t e);

/// Verified violation of the associativity condition, or nullopt when S is
/// associative. Also nullopt when 1 is not in S and no triple violates the
/// condition within the verdict horizon.
std::optional<AssociativityWitness> associativity_witness(const SSet& s);

}  // namespace sconv
