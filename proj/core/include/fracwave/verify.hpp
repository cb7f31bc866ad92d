#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracwave/catalog.hpp"

namespace fracwave::verify {

using catalog::AuxParams;
using catalog::BranchId;
using catalog::SolutionFamily;
using expansion::EquationSpec;
using symexpr::Expr;
using symexpr::NumericBindings;

enum class Outcome { Pass, Fail, OutOfDomain };
const char* outcome_name(Outcome o);

struct ResidualReport {
  std::string subject;
  std::string kind;
  NumericBindings params;
  std::size_t samples = 0;
  std::size_t skipped = 0;
  double max_residual = 0.0;  // raw
  double scaled = 0.0;        // divided by the largest term magnitude where applicable
  double location = 0.0;      // sample coordinate of the maximum
  double tolerance = 0.0;
  std::optional<double> convergence_ratio;
  Outcome verdict = Outcome::Pass;
  std::optional<std::string> erratum_note;

  /// Applies the pass rule: scaled < tolerance and skipped fraction < 20%.
  void decide();
};

constexpr double kAuxTolerance = 1e-9;
constexpr double kOdeTolerance = 1e-6;
constexpr double kAgreementTolerance = 1e-9;
constexpr double kPoleGuard = 1e-3;

/// n points strictly inside [lo, hi] (cell midpoints).
std::vector<double> sample_points(double lo, double hi, std::size_t n);

/// max |Phi' - p e^(-Phi) - q e^(Phi) - r| with Phi = -ln(E) differentiated
/// symbolically. Samples near poles or zeros of E are skipped.
ResidualReport aux_ode_residual(BranchId id, const AuxParams& a, std::span<const double> samples);

/// Reduced-ODE residual of arbitrary profiles (one per function of the spec)
/// with wave speed `speed`, all in xi and the parameters bound by `params`.
/// Samples where `skip` returns true are counted and skipped.
ResidualReport profile_residual(const EquationSpec& spec, const std::vector<Expr>& profiles, const Expr& speed,
                                const NumericBindings& params, std::span<const double> samples,
                                const std::function<bool(double)>& skip = {});

/// Residual of a catalog family at the given parameters. `printed` selects
/// the family's printed reference strings instead of the composed recipe.
ResidualReport reduced_ode_residual(const EquationSpec& spec, const SolutionFamily& f, const NumericBindings& params,
                                    std::span<const double> samples, bool printed = false);

/// max |a_i - b_i| / max(1, |b_i|) over samples, in xi.
ResidualReport pointwise_agreement(const std::vector<Expr>& a, const std::vector<Expr>& b,
                                   const NumericBindings& params, std::span<const double> samples,
                                   const std::function<bool(double)>& skip = {});

struct Grid {
  double x0 = -2.0;
  double x1 = 2.0;
  double t0 = 0.0;
  double t1 = 0.5;
  std::size_t nx = 81;
  std::size_t nt = 11;

  double hx() const { return (x1 - x0) / static_cast<double>(nx - 1); }
  double ht() const { return (t1 - t0) / static_cast<double>(nt - 1); }
  void validate() const;
  /// Same ranges with both spacings halved.
  Grid refined() const;
};

/// Field values (u, or u and v) at a point.
using FieldFn = std::function<std::vector<double>(double x, double t)>;

/// Central-difference residual of the classical (alpha = beta = 1) PDE on
/// interior grid points; points whose stencil touches a failed evaluation
/// are skipped. Constants (A, L, M) come from `params`.
ResidualReport classical_residual(const std::string& equation, const FieldFn& field, const NumericBindings& params,
                                  const Grid& grid);

/// Classical check of a family on `grid` and on its refinement; the verdict
/// requires a residual reduction factor >= 3.5. Throws InvalidArgument when
/// alpha or beta differ from 1 or the family has complex coefficients.
ResidualReport classical_pde_residual(const SolutionFamily& f, const NumericBindings& params, const Grid& grid,
                                      double alpha = 1.0, double beta = 1.0);

/// Numeric field evaluator for a family through the wave coordinate.
FieldFn family_field(const SolutionFamily& f, const NumericBindings& params, double alpha, double beta);

struct AuditOptions {
  std::uint64_t seed = 0x5eed2024;
  std::size_t draws = 3;        // parameter draws per family
  std::size_t samples = 60;     // xi samples per draw
  std::size_t aux_draws = 5;
  std::size_t aux_samples = 100;
};

/// Full audit of the listed equations, in the given order. Empty input gives
/// an empty report.
std::vector<ResidualReport> family_audit(const std::vector<std::string>& equations, const AuditOptions& options = {});

}  // namespace fracwave::verify
