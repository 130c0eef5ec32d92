#include "sconv/arith_func.hpp"

#include <array>

namespace sconv {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr std::array<std::pair<NamedFunction, std::string_view>, 9> kNames{{
    {NamedFunction::One, "I"},
    {NamedFunction::Identity, "E"},
    {NamedFunction::Delta, "delta"},
    {NamedFunction::Mobius, "mu"},
    {NamedFunction::Tau, "tau"},
    {NamedFunction::Sigma, "sigma"},
    {NamedFunction::TauStar, "tau_star"},
    {NamedFunction::SigmaStar, "sigma_star"},
    {NamedFunction::Phi, "phi"},
}};

Int sigma_prime_power(std::uint64_t p, unsigned a) {
  Int sum = 1;
  Int pk = 1;
  for (unsigned i = 1; i <= a; ++i) {
    pk = checked_mul(pk, static_cast<Int>(p));
    sum = checked_add(sum, pk);
  }
  return sum;
}

/// Prime-power rule of a multiplicative named function.
PrimePowerFn named_prime_power(NamedFunction f) {
  switch (f) {
    case NamedFunction::One: return [](std::uint64_t, unsigned) -> Int { return 1; };
    case NamedFunction::Identity:
      return [](std::uint64_t p, unsigned a) -> Int { return checked_pow(static_cast<Int>(p), a); };
    case NamedFunction::Delta: return [](std::uint64_t, unsigned) -> Int { return 0; };
    case NamedFunction::Mobius: return [](std::uint64_t, unsigned a) -> Int { return a == 1 ? -1 : 0; };
    case NamedFunction::Tau: return [](std::uint64_t, unsigned a) -> Int { return static_cast<Int>(a) + 1; };
    case NamedFunction::Sigma: return sigma_prime_power;
    case NamedFunction::TauStar: return [](std::uint64_t, unsigned) -> Int { return 2; };
    case NamedFunction::SigmaStar:
      return [](std::uint64_t p, unsigned a) -> Int { return checked_add(1, checked_pow(static_cast<Int>(p), a)); };
    case NamedFunction::Phi:
      return [](std::uint64_t p, unsigned a) -> Int {
        return checked_mul(checked_pow(static_cast<Int>(p), a - 1), static_cast<Int>(p) - 1);
      };
  }
  throw DomainError("unknown named function");
}

}  // namespace

std::string_view name_of(NamedFunction f) {
  for (const auto& [k, v] : kNames) {
    if (k == f) return v;
  }
  return "?";
}

std::optional<NamedFunction> named_function_from(std::string_view name) {
  for (const auto& [k, v] : kNames) {
    if (v == name) return k;
  }
  return std::nullopt;
}

DenseTable::DenseTable(std::vector<Int> zero_slot_then_values) : values_(std::move(zero_slot_then_values)) {
  if (values_.empty()) values_.push_back(0);
  values_[0] = 0;
}

Int DenseTable::at(std::uint64_t n) const {
  if (n == 0 || n > limit()) {
    throw BoundError("table index " + std::to_string(n) + " outside 1.." + std::to_string(limit()));
  }
  return values_[n];
}

ArithFunc ArithFunc::table(DenseTable values, std::string label) {
  if (values.limit() < 1) throw DomainError("dense table must contain index 1");
  return {Table{std::move(values)}, std::move(label)};
}

ArithFunc ArithFunc::multiplicative(PrimePowerFn ppv, std::string label) {
  return {Multiplicative{std::move(ppv)}, std::move(label)};
}

ArithFunc ArithFunc::completely_multiplicative(std::function<Int(std::uint64_t)> prime_value, std::string label) {
  return {CompletelyMultiplicative{std::move(prime_value)}, std::move(label)};
}

ArithFunc ArithFunc::indicator(std::uint64_t m) {
  if (m == 0) throw DomainError("indicator point must be >= 1");
  DenseTable t(m);
  t[m] = 1;
  return {Table{std::move(t), true}, "indicator(" + std::to_string(m) + ")"};
}

Int ArithFunc::at(const Factorization& fac) const {
  return std::visit(Overloaded{
                        [&](const Table& t) -> Int {
                          const Int n = fac.value();
                          if (n > static_cast<Int>(t.values.limit())) {
                            if (t.zero_beyond) return 0;
                            throw BoundError("table function '" + label_ + "' evaluated past its limit");
                          }
                          return t.values[static_cast<std::uint64_t>(n)];
                        },
                        [&](const Multiplicative& m) -> Int { return eval_multiplicative(m.prime_power_value, fac); },
                        [&](const CompletelyMultiplicative& c) -> Int {
                          Int v = 1;
                          for (const auto& [p, a] : fac) v = checked_mul(v, checked_pow(c.prime_value(p), a));
                          return v;
                        },
                        [&](NamedFunction f) -> Int {
                          if (f == NamedFunction::Delta) return fac.empty() ? 1 : 0;
                          return eval_multiplicative(named_prime_power(f), fac);
                        },
                    },
                    f_);
}

Int ArithFunc::operator()(std::uint64_t n) const {
  if (n == 0) throw DomainError("arithmetical functions are defined on n >= 1");
  if (const auto* t = std::get_if<Table>(&f_)) {
    if (t->zero_beyond && n > t->values.limit()) return 0;
    return t->values.at(n);
  }
  if (const auto* named = std::get_if<NamedFunction>(&f_)) {
    switch (*named) {
      case NamedFunction::One: return 1;
      case NamedFunction::Identity: return static_cast<Int>(n);
      case NamedFunction::Delta: return n == 1 ? 1 : 0;
      default: break;
    }
  }
  return at(factorize(n));
}

DenseTable ArithFunc::tabulate(std::uint64_t n_max) const {
  if (const auto* t = std::get_if<Table>(&f_)) {
    if (n_max > t->values.limit() && !t->zero_beyond) {
      throw BoundError("table function '" + label_ + "' tabulated past its limit");
    }
    DenseTable out(n_max);
    for (std::uint64_t n = 1; n <= std::min(n_max, t->values.limit()); ++n) out[n] = t->values[n];
    return out;
  }
  DenseTable out(n_max);
  if (n_max == 0) return out;
  if (const auto* named = std::get_if<NamedFunction>(&f_)) {
    switch (*named) {
      case NamedFunction::One:
        for (std::uint64_t n = 1; n <= n_max; ++n) out[n] = 1;
        return out;
      case NamedFunction::Identity:
        for (std::uint64_t n = 1; n <= n_max; ++n) out[n] = static_cast<Int>(n);
        return out;
      case NamedFunction::Delta:
        out[1] = 1;
        return out;
      default: break;
    }
  }
  PrimePowerFn ppv = std::visit(Overloaded{
                                    [](const Table&) -> PrimePowerFn { return {}; },
                                    [](const Multiplicative& m) -> PrimePowerFn { return m.prime_power_value; },
                                    [](const CompletelyMultiplicative& c) -> PrimePowerFn {
                                      return [pv = c.prime_value](std::uint64_t p, unsigned a) {
                                        return checked_pow(pv(p), a);
                                      };
                                    },
                                    [](NamedFunction f) -> PrimePowerFn { return named_prime_power(f); },
                                },
                                f_);
  const FactorTable table(std::max<std::uint64_t>(n_max, 2));
  return DenseTable(tabulate_multiplicative(ppv, n_max, table));
}

bool ArithFunc::is_completely_multiplicative() const {
  if (std::holds_alternative<CompletelyMultiplicative>(f_)) return true;
  if (const auto* named = std::get_if<NamedFunction>(&f_)) {
    return *named == NamedFunction::One || *named == NamedFunction::Identity || *named == NamedFunction::Delta;
  }
  return false;
}

bool ArithFunc::is_multiplicative_rule() const { return !std::holds_alternative<Table>(f_); }

}  // namespace sconv
