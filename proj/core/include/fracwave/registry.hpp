#pragma once

#include <string>
#include <vector>

#include "fracwave/expansion.hpp"

namespace fracwave::registry {

using expansion::EquationSpec;
using expansion::ParamSet;
using symexpr::Expr;

/// Names of the registered equations, in catalog order.
const std::vector<std::string>& equation_names();

/// Registered equation by name; throws InvalidArgument for unknown names.
const EquationSpec& equation(const std::string& name);

/// A parameter set as printed in the source, kept verbatim.
struct PrintedSet {
  ParamSet set;
  std::string paper_eq;
};
std::vector<PrintedSet> printed_param_sets(const std::string& name);

/// The coefficient system as printed, when the source prints one.
struct PrintedSystem {
  std::vector<Expr> equations;
  std::string paper_eq;
};
PrintedSystem printed_system(const std::string& name);

}  // namespace fracwave::registry
