#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fracwave/expr.hpp"

namespace fracwave::expansion {

using symexpr::Expr;

/// Laurent polynomial in the kernel E = exp(-Phi), keyed by degree.
using KernelPoly = std::map<int, Expr>;

/// Names of the auxiliary-ODE constants and of the kernel symbol.
struct AuxSymbols {
  std::string kernel = "E";
  std::string p = "p";
  std::string q = "q";
  std::string r = "r";
};

/// How a reduced ODE's wave variable relates to x and t:
/// xi = k * x^beta / Gamma(1+beta) + sign * speed * t^alpha / Gamma(1+alpha).
struct TransformTemplate {
  Expr k = symexpr::sym("k");      // wave number (a symbol or a fixed number)
  Expr speed = symexpr::sym("c");  // coefficient of the time part
  int sign = -1;
  bool beta_equals_alpha = false;  // the transform uses one order for x and t
  bool beta_is_one = false;        // classical in x
};

/// A registered equation, described by its reduced ODE(s) in xi.
struct EquationSpec {
  std::string name;
  std::string title;
  std::string variable = "xi";
  std::vector<std::string> functions;        // unknown functions, e.g. {"w"} or {"u", "v"}
  std::vector<std::string> ansatz_prefixes;  // one coefficient prefix per function
  std::vector<Expr> odes;                    // each equated to zero, derivatives as D(f, xi, n)
  std::vector<std::string> constants;        // physical constants
  std::vector<std::string> solve_unknowns;   // unknowns the solver determines
  std::vector<std::string> free_parameters;  // parameters left arbitrary (e.g. k)
  TransformTemplate transform;
};

/// u = sum_i A_i E^i for one unknown function.
struct Ansatz {
  int N = 0;
  std::string function;
  std::vector<std::string> coefficients;  // A0 .. AN
  Expr expr;                              // polynomial in the kernel symbol
};

struct AlgebraicSystem {
  std::vector<Expr> equations;       // each equated to zero, kernel-free
  std::vector<std::string> labels;   // "E^d" or "u:E^d"
  std::vector<std::string> unknowns;
  std::vector<std::string> free_parameters;
  std::vector<std::string> leading_coefficients;  // A_N of each ansatz
  int ansatz_order = 0;
};

enum class Provenance { Derived, Printed };
const char* provenance_name(Provenance p);

struct ParamSet {
  std::string label;
  std::map<std::string, Expr> assignments;
  /// Auxiliary symbols used inside assignments (such as a printed chi), which
  /// are substituted before verification.
  std::map<std::string, Expr> definitions;
  std::vector<Expr> side_conditions;  // each expression is required to be non-zero
  Provenance provenance = Provenance::Derived;

  /// Assignments with every definition substituted.
  std::map<std::string, Expr> resolved() const;
};

enum class ResidualStatus { Zero, Nonzero, Inconclusive };
const char* residual_status_name(ResidualStatus s);

struct EquationCheck {
  std::string label;
  Expr residual;  // numerator of the substituted equation after radical elimination
  ResidualStatus status = ResidualStatus::Zero;
};

enum class Verdict { Verified, Refuted, Inconclusive };
const char* verdict_name(Verdict v);

struct VerificationReport {
  std::vector<EquationCheck> checks;
  Verdict verdict = Verdict::Verified;
};

struct SolverOptions {
  /// Largest ansatz order the triangular heuristic attempts.
  int max_ansatz_order = 1;
  /// Branching limit for quadratic pivots.
  int max_branches = 16;
};

struct SolveOutcome {
  std::vector<ParamSet> param_sets;
  bool verification_only = false;  // the heuristic stalled
  std::string note;
};

/// Ansatz order from the balancing principle. Throws InvalidArgument when no
/// positive integer balance exists or several inconsistent ones do.
int balance_degree(const EquationSpec& spec);

Ansatz build_ansatz(int N, const std::string& function, const std::string& prefix, const AuxSymbols& aux = {});

/// d/dxi under E' = -(p E^2 + r E + q).
KernelPoly derive_kernel(const KernelPoly& poly, const AuxSymbols& aux = {});
KernelPoly to_kernel_poly(const Expr& e, const AuxSymbols& aux = {});
Expr from_kernel_poly(const KernelPoly& poly, const AuxSymbols& aux = {});

/// Substitutes the ansatz into every ODE of the spec, resolving derivative
/// markers through the derivation rule. One Laurent polynomial per ODE.
std::vector<KernelPoly> reduce_to_polynomial(const EquationSpec& spec, const std::vector<Ansatz>& ansatz,
                                             const AuxSymbols& aux = {});

/// One equation per non-zero coefficient, by ODE and then by ascending degree.
AlgebraicSystem extract_system(const std::vector<KernelPoly>& polys, const std::vector<std::string>& unknowns,
                               const std::vector<std::string>& function_labels = {});

/// balance_degree, build_ansatz, reduce_to_polynomial and extract_system in one step.
AlgebraicSystem derive_system(const EquationSpec& spec, const AuxSymbols& aux = {});

SolveOutcome solve_triangular(const AlgebraicSystem& sys, const SolverOptions& options = {});

VerificationReport verify_param_set(const AlgebraicSystem& sys, const ParamSet& ps);

/// Comparison of a printed system against the derived one, equation by equation.
struct SystemMatch {
  std::size_t printed_index = 0;
  std::optional<std::size_t> derived_index;  // unset when nothing matches
  int sign = 1;                              // printed = sign * derived
  Expr difference;                           // printed - derived at the best candidate
};
std::vector<SystemMatch> compare_systems(const AlgebraicSystem& derived, const std::vector<Expr>& printed);

}  // namespace fracwave::expansion
