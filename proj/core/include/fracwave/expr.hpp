#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fracwave/rational.hpp"

namespace fracwave::symexpr {

/// Node kinds, listed in the rank order used by the canonical total order.
enum class Kind : std::uint8_t { Number, Symbol, Power, Product, Sum, Function, Derivative };

/// Known function symbols.
enum class Func : std::uint8_t { Exp, Ln, Sqrt, Tanh, Coth, Tan, Cot, Gamma, Sign, Abs };

std::string_view func_name(Func f);
std::optional<Func> func_from_name(std::string_view name);

/// Immutable symbolic expression with exact rational constants.
///
/// Every Expr is kept in a canonical, flattened form by its constructors:
/// sums never contain sums, products never contain products, a product has at
/// most one leading rational coefficient, equal bases in a product are merged
/// into integer powers, like terms in a sum are combined, and children are
/// sorted by the total order defined by `compare`. Two expressions built from
/// equal parts are therefore structurally equal.
///
/// Products of sums are *not* distributed here; that is `expand_normalize`.
class Expr {
 public:
  struct Node;

  /// The number zero.
  Expr();
  Expr(std::int64_t value);      // NOLINT(google-explicit-constructor)
  Expr(const Rational& value);   // NOLINT(google-explicit-constructor)

  static Expr symbol(std::string name);

  Kind kind() const;
  bool is_number() const { return kind() == Kind::Number; }
  bool is_symbol() const { return kind() == Kind::Symbol; }
  bool is_zero() const;
  bool is_one() const;

  /// Payload accessors; each is valid only for the matching kind.
  const Rational& value() const;          // Number
  const std::string& name() const;        // Symbol
  Func func() const;                      // Function
  std::int64_t exponent() const;          // Power
  const Expr& base() const;               // Power
  int order() const;                      // Derivative
  const std::string& variable() const;    // Derivative
  const Expr& operand() const;            // Derivative

  /// Sum terms, Product factors, Function arguments, Power {base},
  /// Derivative {operand}. Empty for atoms.
  std::span<const Expr> children() const;

  std::size_t hash() const;
  /// Canonical text in the expression grammar; parse(str()) == *this.
  std::string str() const;

  /// Same node object (cheap identity test, not structural equality).
  bool same_node(const Expr& other) const { return node_ == other.node_; }

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend struct Builder;
};

/// Canonical total order: node kind rank, then payload, then children.
int compare(const Expr& a, const Expr& b);

inline bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }
inline bool operator!=(const Expr& a, const Expr& b) { return compare(a, b) != 0; }

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

Expr make_sum(std::vector<Expr> terms);
Expr make_product(std::vector<Expr> factors);
Expr pow(const Expr& base, std::int64_t exponent);
Expr apply(Func f, std::vector<Expr> args);
inline Expr apply(Func f, const Expr& arg) { return apply(f, std::vector<Expr>{arg}); }
/// Unresolved derivative marker D(f, var, order).
Expr derivative_marker(const Expr& operand, std::string variable, int order);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
/// Throws DomainError when b is the number zero.
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

inline Expr sym(std::string name) { return Expr::symbol(std::move(name)); }
inline Expr num(std::int64_t n) { return Expr(n); }
inline Expr frac(std::int64_t n, std::int64_t d) { return Expr(Rational(n, d)); }

std::string format(const Expr& e);

/// Splits a term into its rational coefficient and the remaining factor part
/// (the number one when the term is a pure number).
std::pair<Rational, Expr> split_coefficient(const Expr& term);

/// Terms of a sum, or the expression itself as a single term.
std::vector<Expr> terms_of(const Expr& e);
/// Factors of a product (coefficient included), or the expression itself.
std::vector<Expr> factors_of(const Expr& e);

/// Symbol name -> replacement expression (simultaneous substitution).
using SymbolBindings = std::map<std::string, Expr>;
/// Symbol name -> numeric value.
using NumericBindings = std::map<std::string, double>;

}  // namespace fracwave::symexpr

template <>
struct std::hash<fracwave::symexpr::Expr> {
  std::size_t operator()(const fracwave::symexpr::Expr& e) const noexcept { return e.hash(); }
};
