#pragma once

#include <complex>

#include "fracwave/expr.hpp"

namespace fracwave::symexpr {

using Complex = std::complex<double>;

/// IEEE double evaluation. Every symbol must be bound. Domain violations
/// (ln of a non-positive number, sqrt of a negative number, division by zero,
/// tan/cot/coth poles, Gamma poles, non-finite results) throw DomainError
/// naming the offending subexpression.
double eval_numeric(const Expr& e, const NumericBindings& bindings);

/// Evaluation over the complex numbers with principal branches. Used by the
/// residual audits, where a real-parameter family may carry complex
/// coefficients (for instance sqrt(r^2 - 4*p*q) with r^2 < 4*p*q).
Complex eval_complex(const Expr& e, const NumericBindings& bindings);

}  // namespace fracwave::symexpr
