#include "sconv/sset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace sconv {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t checked_u64_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("64-bit multiplication overflow");
  return r;
}

std::uint64_t checked_u64_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r = checked_u64_mul(r, base);
  return r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_uint(std::string_view text, std::string_view context) {
  if (text.empty()) throw ParseError("expected an integer in " + std::string(context));
  std::uint64_t v = 0;
  for (const char c : text) {
    if (c < '0' || c > '9') {
      throw ParseError("invalid integer '" + std::string(text) + "' in " + std::string(context));
    }
  }
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("integer out of range '" + std::string(text) + "' in " + std::string(context));
  }
  return v;
}

std::vector<std::uint64_t> parse_braced_list(std::string_view body, std::string_view spec) {
  if (body.size() < 2 || body.front() != '{' || body.back() != '}') {
    throw ParseError("expected '{...}' list in set spec '" + std::string(spec) + "'");
  }
  body = body.substr(1, body.size() - 2);
  std::vector<std::uint64_t> out;
  while (true) {
    const auto comma = body.find(',');
    out.push_back(parse_uint(body.substr(0, comma), spec));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return out;
}

unsigned parse_order(std::string_view digits, std::string_view spec) {
  const std::uint64_t k = parse_uint(digits, spec);
  if (k < 1) throw ParseError("set spec '" + std::string(spec) + "' needs k >= 1");
  if (k > kMaxRuleDepth) {
    throw ParseError("set spec '" + std::string(spec) + "' exceeds supported exponent depth " +
                     std::to_string(kMaxRuleDepth));
  }
  return static_cast<unsigned>(k);
}

GeneralSSet load_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open set file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ParseError("set file '" + path + "' is empty");
  std::string_view header = trim(line);
  if (header.substr(0, 6) != "bound ") throw ParseError("set file '" + path + "' must start with 'bound <B>'");
  const std::uint64_t bound = parse_uint(trim(header.substr(6)), "set file bound");
  if (bound < 1) throw ParseError("set file bound must be >= 1");
  std::vector<std::uint64_t> members;
  while (std::getline(in, line)) {
    const std::string_view t = trim(line);
    if (t.empty()) continue;
    members.push_back(parse_uint(t, "set file member"));
  }
  return GeneralSSet::with_bound(bound, members);
}

}  // namespace

ExponentRule ExponentRule::below(unsigned k) {
  if (k <= 1) return none();
  return ExponentRule(ExponentsBelow{k});
}

ExponentRule ExponentRule::at_least(unsigned e) {
  if (e <= 1) return all();
  return ExponentRule(ExponentsAtLeast{e});
}

ExponentRule ExponentRule::finite(std::vector<unsigned> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (!members.empty() && members.front() == 0) throw DomainError("finite exponent rule members must be >= 1");
  if (!members.empty() && members.back() > kMaxRuleDepth) {
    throw DomainError("finite exponent rule deeper than " + std::to_string(kMaxRuleDepth) + " is unsupported");
  }
  if (members.empty()) return none();
  return ExponentRule(FiniteExponents{std::move(members)});
}

bool ExponentRule::contains(unsigned j) const {
  if (j == 0) return true;
  return std::visit(Overloaded{
                        [](const AllExponents&) { return true; },
                        [](const NoExponents&) { return false; },
                        [j](const ExponentsBelow& r) { return j < r.k; },
                        [j](const ExponentsAtLeast& r) { return j >= r.e; },
                        [j](const FiniteExponents& r) {
                          return std::binary_search(r.members.begin(), r.members.end(), j);
                        },
                    },
                    rule_);
}

bool ExponentRule::upward_closed() const {
  return std::holds_alternative<AllExponents>(rule_) || std::holds_alternative<NoExponents>(rule_) ||
         std::holds_alternative<ExponentsAtLeast>(rule_);
}

std::optional<unsigned> ExponentRule::least_excluded() const {
  return std::visit(Overloaded{
                        [](const AllExponents&) -> std::optional<unsigned> { return std::nullopt; },
                        [](const NoExponents&) -> std::optional<unsigned> { return 1U; },
                        [](const ExponentsBelow& r) -> std::optional<unsigned> { return r.k; },
                        [](const ExponentsAtLeast&) -> std::optional<unsigned> { return 1U; },
                        [](const FiniteExponents& r) -> std::optional<unsigned> {
                          unsigned j = 1;
                          for (const unsigned m : r.members) {
                            if (m != j) break;
                            ++j;
                          }
                          return j;
                        },
                    },
                    rule_);
}

MultiplicativeSSet::MultiplicativeSSet(ExponentRule default_rule, std::map<std::uint64_t, ExponentRule> overrides)
    : default_(std::move(default_rule)), overrides_(std::move(overrides)) {
  for (const auto& [p, rule] : overrides_) {
    if (!is_prime(p)) throw DomainError("override key " + std::to_string(p) + " is not prime");
  }
}

const ExponentRule& MultiplicativeSSet::rule_at(std::uint64_t prime) const {
  const auto it = overrides_.find(prime);
  return it == overrides_.end() ? default_ : it->second;
}

bool MultiplicativeSSet::contains(const Factorization& f) const {
  return std::all_of(f.begin(), f.end(), [&](const PrimePower& pp) { return rule_at(pp.prime).contains(pp.exponent); });
}

GeneralSSet GeneralSSet::from_members(std::vector<std::uint64_t> members) {
  GeneralSSet s;
  std::uint64_t top = 1;
  for (const auto m : members) {
    if (m == 0) throw DomainError("set members must be positive");
    top = std::max(top, m);
  }
  s.table_.assign(top + 1, false);
  for (const auto m : members) s.table_[m] = true;
  return s;
}

GeneralSSet GeneralSSet::with_bound(std::uint64_t bound, const std::vector<std::uint64_t>& members) {
  if (bound == 0) throw DomainError("set bound must be >= 1");
  GeneralSSet s;
  s.bound_ = bound;
  s.table_.assign(bound + 1, false);
  for (const auto m : members) {
    if (m == 0 || m > bound) {
      throw DomainError("set member " + std::to_string(m) + " outside 1.." + std::to_string(bound));
    }
    s.table_[m] = true;
  }
  return s;
}

bool GeneralSSet::contains(std::uint64_t m) const {
  if (m == 0) throw DomainError("rho is defined on positive integers");
  if (m < table_.size()) return table_[m];
  if (bound_) {
    throw BoundError("membership of " + std::to_string(m) + " unknown beyond bound " + std::to_string(*bound_));
  }
  return false;
}

std::vector<std::uint64_t> GeneralSSet::members() const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 1; m < table_.size(); ++m) {
    if (table_[m]) out.push_back(m);
  }
  return out;
}

const MultiplicativeSSet& SSet::multiplicative() const {
  if (const auto* m = std::get_if<MultiplicativeSSet>(&set_)) return *m;
  throw DomainError("set '" + name_ + "' is not a multiplicative descriptor");
}

bool SSet::contains(std::uint64_t m) const {
  if (m == 0) throw DomainError("rho is defined on positive integers");
  return std::visit([m](const auto& s) { return s.contains(m); }, set_);
}

std::optional<std::uint64_t> SSet::known_bound() const {
  if (const auto* g = general()) return g->bound();
  return std::nullopt;
}

namespace {

SSet parse_sset_unchecked(std::string_view spec_in) {
  const std::string_view spec = trim(spec_in);
  const std::string name(spec);
  if (spec.empty()) throw ParseError("empty set spec");
  if (spec == "N") return {MultiplicativeSSet(ExponentRule::all()), name};
  if (spec == "1") return {MultiplicativeSSet(ExponentRule::none()), name};
  if (spec.substr(0, 5) == "FILE:") {
    const std::string path(spec.substr(5));
    if (path.empty()) throw ParseError("FILE: spec needs a path");
    return {load_set_file(path), name};
  }
  switch (spec.front()) {
    case 'Q':
      return {MultiplicativeSSet(ExponentRule::below(parse_order(spec.substr(1), spec))), name};
    case 'L':
      return {MultiplicativeSSet(ExponentRule::at_least(parse_order(spec.substr(1), spec))), name};
    case 'P': {
      std::map<std::uint64_t, ExponentRule> overrides;
      for (const auto p : parse_braced_list(spec.substr(1), spec)) {
        if (!is_prime(p)) throw ParseError("P-list entry " + std::to_string(p) + " is not prime");
        overrides.emplace(p, ExponentRule::all());
      }
      return {MultiplicativeSSet(ExponentRule::none(), std::move(overrides)), name};
    }
    case 'F':
      return {GeneralSSet::from_members(parse_braced_list(spec.substr(1), spec)), name};
    default:
      throw ParseError("unrecognized set spec '" + name + "'");
  }
}

}  // namespace

SSet parse_sset(std::string_view spec) {
  try {
    return parse_sset_unchecked(spec);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  } catch (const BoundError& e) {
    throw ParseError(e.what());
  }
}

namespace {

std::string join(const std::vector<std::uint64_t>& xs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << xs[i];
  return out.str();
}

std::optional<std::string> render_multiplicative(const MultiplicativeSSet& m) {
  const auto& rule = m.default_rule().variant();
  if (m.overrides().empty()) {
    if (std::holds_alternative<AllExponents>(rule)) return "N";
    if (std::holds_alternative<NoExponents>(rule)) return "1";
    if (const auto* b = std::get_if<ExponentsBelow>(&rule)) return "Q" + std::to_string(b->k);
    if (const auto* a = std::get_if<ExponentsAtLeast>(&rule)) return "L" + std::to_string(a->e);
    return std::nullopt;
  }
  if (!std::holds_alternative<NoExponents>(rule)) return std::nullopt;
  std::vector<std::uint64_t> primes;
  for (const auto& [p, r] : m.overrides()) {
    if (std::holds_alternative<NoExponents>(r.variant())) continue;
    if (!std::holds_alternative<AllExponents>(r.variant())) return std::nullopt;
    primes.push_back(p);
  }
  if (primes.empty()) return "1";
  return "P{" + join(primes) + "}";
}

}  // namespace

std::string render(const SSet& s) {
  if (s.is_multiplicative_descriptor()) return render_multiplicative(s.multiplicative()).value_or(s.name());
  const GeneralSSet& g = *s.general();
  if (g.bound()) return s.name();
  return "F{" + join(g.members()) + "}";
}

std::vector<std::uint8_t> rho_table(const SSet& s, std::uint64_t n_max, const FactorTable& table) {
  std::vector<std::uint8_t> out(n_max + 1, 0);
  if (n_max >= 1) out[1] = s.contains(1) ? 1 : 0;
  if (!s.is_multiplicative_descriptor()) {
    for (std::uint64_t i = 2; i <= n_max; ++i) out[i] = s.contains(i) ? 1 : 0;
    return out;
  }
  if (n_max > table.limit() && n_max > 1) throw BoundError("rho_table: factor table too small");
  const auto& m = s.multiplicative();
  // rest[n]: n with its smallest prime power removed; exps[n]: that exponent.
  std::vector<std::uint32_t> rest(n_max + 1, 1);
  std::vector<std::uint8_t> exps(n_max + 1, 0);
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    const std::uint64_t p = table.spf(n);
    const std::uint64_t q = n / p;
    if (q % p == 0) {
      rest[n] = rest[q];
      exps[n] = static_cast<std::uint8_t>(exps[q] + 1);
    } else {
      rest[n] = static_cast<std::uint32_t>(q);
      exps[n] = 1;
    }
    const std::uint64_t r = rest[n];
    out[n] = r == 1 ? (m.contains_prime_power(p, exps[n]) ? 1 : 0) : (out[n / r] & out[r]);
  }
  return out;
}

std::vector<std::uint8_t> rho_table(const SSet& s, std::uint64_t n_max) {
  if (!s.is_multiplicative_descriptor()) {
    std::vector<std::uint8_t> out(n_max + 1, 0);
    for (std::uint64_t i = 1; i <= n_max; ++i) out[i] = s.contains(i) ? 1 : 0;
    return out;
  }
  return rho_table(s, n_max, FactorTable(std::max<std::uint64_t>(n_max, 2)));
}

MultiplicativityVerdict is_multiplicative(const SSet& s, std::uint64_t horizon) {
  MultiplicativityVerdict v;
  if (s.is_multiplicative_descriptor()) {
    v.reason = "multiplicative by construction";
    return v;
  }
  if (!s.contains(1)) {
    v.holds = false;
    v.reason = "1 is not in S";
    return v;
  }
  if (const auto b = s.known_bound()) horizon = std::min(horizon, *b);
  v.checked_up_to = horizon;
  for (std::uint64_t m = 2; m * (m + 1) <= horizon; ++m) {
    for (std::uint64_t n = m + 1; m * n <= horizon; ++n) {
      if (std::gcd(m, n) != 1) continue;
      if (s.contains(m * n) != (s.contains(m) && s.contains(n))) {
        v.holds = false;
        v.witness = std::pair{m, n};
        v.reason = "rho(" + std::to_string(m * n) + ") != rho(" + std::to_string(m) + ") rho(" + std::to_string(n) + ")";
        return v;
      }
    }
  }
  v.reason = "multiplicative up to " + std::to_string(horizon);
  return v;
}

MultiplicativityVerdict is_multiplicative(const SSet& s) {
  const GeneralSSet* g = s.general();
  return is_multiplicative(s, g ? g->verdict_horizon() : kDefaultVerdictHorizon);
}

std::string_view to_string(PrimeCase c) {
  switch (c) {
    case PrimeCase::AllIn: return "(i) all-in";
    case PrimeCase::AllOut: return "(ii) all-out";
    case PrimeCase::Threshold: return "(iii) threshold";
    case PrimeCase::NotUpwardClosed: return "not upward-closed";
  }
  return "?";
}

PrimeClassification classify_prime(const SSet& s, std::uint64_t prime, unsigned depth) {
  if (!is_prime(prime)) throw DomainError(std::to_string(prime) + " is not prime");
  const ExponentRule& rule = s.multiplicative().rule_at(prime);
  PrimeClassification c{prime, PrimeCase::AllIn, std::nullopt, rule.least_excluded()};
  std::visit(Overloaded{
                 [&](const AllExponents&) { c.prime_case = PrimeCase::AllIn; },
                 [&](const NoExponents&) { c.prime_case = PrimeCase::AllOut; },
                 [&](const ExponentsBelow&) { c.prime_case = PrimeCase::NotUpwardClosed; },
                 [&](const ExponentsAtLeast& r) {
                   c.prime_case = PrimeCase::Threshold;
                   c.threshold = r.e;
                 },
                 [&](const FiniteExponents& r) {
                   if (r.members.back() > depth) {
                     throw DomainError("finite exponent rule at p=" + std::to_string(prime) + " exceeds depth " +
                                       std::to_string(depth));
                   }
                   c.prime_case = PrimeCase::NotUpwardClosed;
                 },
             },
             rule.variant());
  return c;
}

bool associativity_condition_holds(const SSet& s, std::uint64_t n, std::uint64_t d, std::uint64_t e) {
  if (e == 0 || d % e != 0 || n % d != 0) throw DomainError("associativity condition needs e | d | n");
  const bool lhs = s.contains(std::gcd(d, n / d)) && s.contains(std::gcd(e, d / e));
  const bool rhs = s.contains(std::gcd(e, n / e)) && s.contains(std::gcd(d / e, n / d));
  return lhs == rhs;
}

namespace {

std::optional<AssociativityWitness> scan_associativity(const SSet& s, std::uint64_t horizon) {
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    const auto ds = divisors(n);
    for (const auto d : ds) {
      for (const auto e : ds) {
        if (e > d) break;
        if (d % e != 0) continue;
        if (!associativity_condition_holds(s, n, d, e)) return AssociativityWitness{n, d, e};
      }
    }
  }
  return std::nullopt;
}

std::uint64_t least_prime_not_in(const std::map<std::uint64_t, ExponentRule>& overrides) {
  for (std::uint64_t p = 2;; ++p) {
    if (is_prime(p) && !overrides.contains(p)) return p;
  }
}

}  // namespace

Verdict is_associative(const SSet& s) {
  Verdict v;
  if (s.is_multiplicative_descriptor()) {
    const auto& m = s.multiplicative();
    if (!m.default_rule().upward_closed()) {
      v.holds = false;
      v.reason = "default exponent rule is not upward-closed";
      return v;
    }
    for (const auto& [p, rule] : m.overrides()) {
      if (!rule.upward_closed()) {
        v.holds = false;
        v.reason = "exponent rule at p=" + std::to_string(p) + " is not upward-closed";
        return v;
      }
    }
    v.reason = "multiplicative and upward-closed at every prime";
    return v;
  }
  const auto mv = is_multiplicative(s);
  if (!mv.holds) {
    v.holds = false;
    v.reason = "not multiplicative: " + mv.reason;
    return v;
  }
  const std::uint64_t horizon = *mv.checked_up_to;
  v.checked_up_to = horizon;
  if (const auto w = scan_associativity(s, horizon)) {
    v.holds = false;
    v.reason = "associativity condition fails at (n,d,e)=(" + std::to_string(w->n) + "," + std::to_string(w->d) + "," +
               std::to_string(w->e) + ")";
    return v;
  }
  v.reason = "associative up to " + std::to_string(horizon);
  return v;
}

std::optional<AssociativityWitness> associativity_witness(const SSet& s) {
  if (is_associative(s).holds) return std::nullopt;

  if (s.is_multiplicative_descriptor()) {
    const auto& m = s.multiplicative();
    // Least prime whose rule is not upward-closed.
    std::optional<std::uint64_t> prime;
    for (const auto& [p, rule] : m.overrides()) {
      if (!rule.upward_closed()) {
        prime = p;
        break;
      }
    }
    if (!m.default_rule().upward_closed()) {
      const std::uint64_t q = least_prime_not_in(m.overrides());
      if (!prime || q < *prime) prime = q;
    }
    const std::uint64_t p = *prime;
    const ExponentRule& rule = m.rule_at(p);
    for (unsigned j = 1; j <= kMaxRuleDepth; ++j) {
      if (!rule.contains(j)) continue;
      for (unsigned l = j + 1; l <= kMaxRuleDepth + 1; ++l) {
        if (rule.contains(l)) continue;
        AssociativityWitness w{};
        if (l < 2 * j) {
          w = {checked_u64_pow(p, l + 2 * j), checked_u64_pow(p, l + j), checked_u64_pow(p, l)};
        } else {
          w = {checked_u64_pow(p, 2 * l), checked_u64_pow(p, l), checked_u64_pow(p, l - j)};
        }
        if (!associativity_condition_holds(s, w.n, w.d, w.e)) return w;
      }
    }
    throw ConsistencyError("no verified associativity witness for non-associative set '" + s.name() + "'");
  }

  const auto mv = is_multiplicative(s);
  if (mv.witness) {
    try {
      const auto [a, b] = *mv.witness;
      const std::uint64_t ab = checked_u64_mul(a, b);
      const AssociativityWitness w{checked_u64_mul(ab, ab), ab, a};
      if (!associativity_condition_holds(s, w.n, w.d, w.e)) return w;
    } catch (const BoundError&) {
    } catch (const OverflowError&) {
    }
  }
  const GeneralSSet* g = s.general();
  return scan_associativity(s, g->verdict_horizon());
}

}  // namespace sconv
