#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sconv/arith.hpp"

namespace sconv {

/// Values f(1..N); index 0 exists but is unused and always 0.
class DenseTable {
 public:
  DenseTable() : values_(1, 0) {}
  explicit DenseTable(std::uint64_t limit) : values_(limit + 1, 0) {}
  /// Takes a vector whose index 0 is ignored (reset to 0).
  explicit DenseTable(std::vector<Int> zero_slot_then_values);

  [[nodiscard]] std::uint64_t limit() const { return values_.size() - 1; }
  Int& operator[](std::uint64_t n) { return values_[n]; }
  const Int& operator[](std::uint64_t n) const { return values_[n]; }
  /// Bounds-checked access for 1 <= n <= limit().
  [[nodiscard]] Int at(std::uint64_t n) const;
  [[nodiscard]] const std::vector<Int>& raw() const { return values_; }

  friend bool operator==(const DenseTable&, const DenseTable&) = default;

 private:
  std::vector<Int> values_;
};

enum class NamedFunction { One, Identity, Delta, Mobius, Tau, Sigma, TauStar, SigmaStar, Phi };

/// Registry name ("I", "E", "delta", "mu", "tau", "sigma", "tau_star", "sigma_star", "phi").
std::string_view name_of(NamedFunction f);
std::optional<NamedFunction> named_function_from(std::string_view name);

/// An arithmetical function: dense table, multiplicative prime-power rule,
/// completely multiplicative prime rule, or a named builtin.
class ArithFunc {
 public:
  struct Table {
    DenseTable values;
    /// Finitely supported: values past the table are 0 instead of an error.
    bool zero_beyond = false;
  };
  struct Multiplicative {
    PrimePowerFn prime_power_value;
  };
  struct CompletelyMultiplicative {
    std::function<Int(std::uint64_t prime)> prime_value;
  };
  using Variant = std::variant<Table, Multiplicative, CompletelyMultiplicative, NamedFunction>;

  ArithFunc(NamedFunction f) : f_(f), label_(name_of(f)) {}  // NOLINT(google-explicit-constructor)
  static ArithFunc table(DenseTable values, std::string label = "table");
  static ArithFunc multiplicative(PrimePowerFn ppv, std::string label = "multiplicative");
  static ArithFunc completely_multiplicative(std::function<Int(std::uint64_t)> prime_value,
                                             std::string label = "completely multiplicative");
  /// Indicator of the single point {m}; 0 everywhere else, including past m.
  static ArithFunc indicator(std::uint64_t m);

  /// f(n) for n >= 1. Throws BoundError past a table's limit.
  [[nodiscard]] Int operator()(std::uint64_t n) const;
  [[nodiscard]] Int at(const Factorization& f) const;
  /// f on 1..n_max, using sieves for named and rule-based functions.
  [[nodiscard]] DenseTable tabulate(std::uint64_t n_max) const;

  [[nodiscard]] bool is_completely_multiplicative() const;
  [[nodiscard]] bool is_multiplicative_rule() const;
  [[nodiscard]] const Variant& variant() const { return f_; }
  [[nodiscard]] const std::string& label() const { return label_; }

 private:
  ArithFunc(Variant f, std::string label) : f_(std::move(f)), label_(std::move(label)) {}
  Variant f_;
  std::string label_;
};

}  // namespace sconv
