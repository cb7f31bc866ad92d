#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "fracwave/expr.hpp"

namespace fracwave::symexpr {

struct DiffOptions {
  /// Symbols that stand for unknown functions of the differentiation variable.
  std::set<std::string> function_symbols;
  /// Return D(f, var, n) markers for derivatives of unknown functions instead
  /// of throwing.
  bool allow_unresolved = false;
};

/// Exact derivative of `e` with respect to `var`, `order` times. Symbols other
/// than `var` are constants unless listed in `opts.function_symbols`.
Expr differentiate(const Expr& e, const std::string& var, int order = 1, const DiffOptions& opts = {});

/// Simultaneous substitution: every replacement reads the original tree.
Expr substitute(const Expr& e, const SymbolBindings& bindings);

/// Top-down rewrite. `visit` is tried on each node before its children and may
/// return a replacement; replaced nodes are not revisited. Other nodes are
/// rebuilt from their rewritten children through the canonical constructors.
Expr rewrite(const Expr& e, const std::function<std::optional<Expr>(const Expr&)>& visit);

/// Fully distributed sum-of-products form. Positive integer powers of sums
/// are multiplied out; negative powers of sums stay as opaque factors with
/// expanded bases.
Expr expand_normalize(const Expr& e);

/// Product of two already-expanded expressions, distributed.
Expr multiply_expanded(const Expr& a, const Expr& b);

/// Coefficients of a Laurent polynomial in `kernel`, keyed by degree. Zero
/// coefficients are omitted. Throws InvalidArgument when the kernel occurs
/// anywhere other than as an integer power factor.
std::map<int, Expr> collect_powers(const Expr& e, const std::string& kernel);

/// Inverse of collect_powers.
Expr from_powers(const std::map<int, Expr>& coeffs, const std::string& kernel);

/// Numerator/denominator split over a common denominator.
struct Fraction {
  Expr numerator;    // expanded
  Expr denominator;  // product of the distinct denominator factors
};
Fraction together(const Expr& e);

/// together() followed by cancellation of polynomial common factors between
/// the numerator and each denominator factor.
Fraction cancel(const Expr& e);

/// Multivariate polynomial GCD over the rationals, normalized to a leading
/// coefficient of one. Non-polynomial subterms are treated as atoms; nullopt
/// when either input has negative powers.
std::optional<Expr> polynomial_gcd(const Expr& a, const Expr& b);
/// Exact polynomial quotient a / b, or nullopt when b does not divide a.
std::optional<Expr> polynomial_quotient(const Expr& a, const Expr& b);

/// Rewrites sqrt(X)^n for |n| >= 2 as X^(n div 2) * sqrt(X)^(n mod 2) and
/// re-expands until no such power remains.
Expr eliminate_radical_squares(const Expr& e);

bool contains_symbol(const Expr& e, const std::string& name);
/// True when any node of `e` satisfies `pred`.
bool contains(const Expr& e, const std::function<bool(const Expr&)>& pred);
std::set<std::string> free_symbols(const Expr& e);

/// Degree of `e` (expanded) as a polynomial in `name`; nullopt if `name`
/// appears in a negative power or inside a non-polynomial subterm.
std::optional<int> polynomial_degree(const Expr& e, const std::string& name);

}  // namespace fracwave::symexpr
