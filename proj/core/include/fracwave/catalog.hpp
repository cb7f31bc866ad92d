#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "fracwave/expansion.hpp"

namespace fracwave::catalog {

using expansion::EquationSpec;
using expansion::ParamSet;
using symexpr::Expr;
using symexpr::NumericBindings;

/// Closed-form solution branches of the auxiliary ODE. Each id names the
/// function appearing in exp(-Phi) itself.
enum class BranchId : std::uint8_t { T1a, T1b, T1c, T1d, T2tan, T2cot, T2tanh, T2coth, T3 };

struct AuxParams {
  double p = 1.0;
  double q = 0.0;
  double r = 0.0;
  double xi0 = 0.0;
};

struct SolutionBranch {
  BranchId id;
  std::string name;
  std::string type;      // "Type 1", "Type 2", "Type 3"
  std::string paper_eq;  // the printed Phi formula this branch inverts
  std::vector<std::string> constraints;
  symexpr::SymbolBindings specialization;  // p = 1, r = 0, ... implied by the branch
  Expr closed_form;                        // exp(-Phi) in xi, xi0, p, q, r
};

const std::vector<SolutionBranch>& branches();
const SolutionBranch& branch(BranchId id);
std::string_view branch_name(BranchId id);
std::optional<BranchId> branch_from_name(std::string_view name);

/// Throws ConstraintError naming the first violated condition.
void check_constraints(BranchId id, const AuxParams& a);
bool satisfies(BranchId id, const AuxParams& a);

/// exp(-Phi(xi)) with the numeric parameters substituted as exact rationals.
Expr aux_exp_neg_phi(BranchId id, const AuxParams& a);

/// True within `guard` (in xi) of a pole of exp(-Phi).
bool near_pole(BranchId id, const AuxParams& a, double xi, double guard = 1e-3);
/// True within `guard` (in xi) of a zero of exp(-Phi), where Phi itself is singular.
bool near_zero(BranchId id, const AuxParams& a, double xi, double guard = 1e-3);

/// Random constraint-satisfying parameters, quantized to multiples of 1/16.
AuxParams draw_aux(BranchId id, std::mt19937_64& rng);
/// Uniform double in [lo, hi] quantized to 1/16.
double draw_value(std::mt19937_64& rng, double lo, double hi);

struct SolutionFamily {
  std::string equation;
  std::string id;         // "<equation>:<branch>" or "<equation>:<set>:<branch>"
  std::string set_label;  // parameter set the family was composed from
  std::string paper_eq;   // printed counterpart, empty when none is printed
  BranchId branch;
  std::vector<std::string> constraints;
  std::vector<std::string> functions;       // u, or u and v
  std::map<std::string, Expr> assignments;  // specialized to the branch
  Expr wave_speed;                          // value of c
  std::vector<Expr> profiles;               // U(xi) per function
  std::vector<Expr> fields;                 // u(x, t) per function
  expansion::TransformTemplate transform;
  bool complex_valued = false;  // coefficients are complex for real parameters
  std::vector<Expr> printed_profiles;
  std::optional<Expr> printed_speed;
};

/// u = sum A_i E^i with E from the branch and the transform substituted.
SolutionFamily compose_solution(const EquationSpec& spec, BranchId id, const ParamSet& ps);

/// Families for one registered equation; throws InvalidArgument for unknown names.
std::vector<SolutionFamily> builtin_families(const std::string& equation);
/// Looks up a family by full id or by branch name within an equation.
SolutionFamily find_family(const std::string& equation, const std::string& selector);

/// Random parameters for a family: branch constants, xi0 and the equation's
/// physical and free constants.
NumericBindings draw_parameters(const SolutionFamily& f, std::mt19937_64& rng);
AuxParams aux_of(const NumericBindings& b);
/// Checks branch constraints and the family's non-zero side conditions.
void check_family_parameters(const SolutionFamily& f, const NumericBindings& b);

/// Expression with every bound symbol replaced by its exact rational value.
Expr bind_exact(const Expr& e, const NumericBindings& b);

/// Wave coordinate expression k*X + sign*speed*T in x, t, alpha, beta.
Expr wave_coordinate_expr(const expansion::TransformTemplate& t, const Expr& speed);

}  // namespace fracwave::catalog
