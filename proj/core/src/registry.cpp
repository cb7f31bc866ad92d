#include "fracwave/registry.hpp"

#include <algorithm>
#include <map>

#include "fracwave/error.hpp"
#include "fracwave/parse.hpp"

namespace fracwave::registry {

using symexpr::parse;
using symexpr::sym;

namespace {

std::vector<EquationSpec> build_specs() {
  std::vector<EquationSpec> out;
  {
    EquationSpec s;
    s.name = "burgers";
    s.title = "space-time fractional Burgers equation";
    s.functions = {"w"};
    s.ansatz_prefixes = {"A"};
    s.odes = {parse("c*w + k*w^2 + A*k^2*D(w, xi, 1)")};
    s.constants = {"A"};
    s.solve_unknowns = {"A0", "A1", "c"};
    s.free_parameters = {"k"};
    s.transform = {sym("k"), sym("c"), -1, false, false};
    out.push_back(std::move(s));
  }
  {
    EquationSpec s;
    s.name = "coupled-burgers";
    s.title = "space-time fractional coupled Burgers equations";
    s.functions = {"u", "v"};
    s.ansatz_prefixes = {"A", "B"};
    s.odes = {parse("c*D(u, xi, 1) - D(u, xi, 2) + 2*u*D(u, xi, 1) + L*(D(u, xi, 1)*v + u*D(v, xi, 1))"),
              parse("c*D(v, xi, 1) - D(v, xi, 2) + 2*v*D(v, xi, 1) + M*(D(u, xi, 1)*v + u*D(v, xi, 1))")};
    s.constants = {"L", "M"};
    s.solve_unknowns = {"A0", "A1", "B1", "c"};
    s.free_parameters = {"B0"};
    s.transform = {symexpr::Expr(1), sym("c"), 1, true, false};
    out.push_back(std::move(s));
  }
  {
    EquationSpec s;
    s.name = "foam-drainage";
    s.title = "space-time fractional foam drainage equation";
    s.functions = {"V"};
    s.ansatz_prefixes = {"A"};
    s.odes = {parse("-c*D(V, xi, 1) + 1/2*k^2*V*D(V, xi, 2) + 2*k*V^2*D(V, xi, 1) + k^2*D(V, xi, 1)^2")};
    s.solve_unknowns = {"A0", "A1", "c"};
    s.free_parameters = {"k"};
    s.transform = {sym("k"), sym("c"), 1, false, false};
    out.push_back(std::move(s));
  }
  {
    EquationSpec s;
    s.name = "sawada-kotera";
    s.title = "time fractional Sawada-Kotera equation";
    s.functions = {"w"};
    s.ansatz_prefixes = {"A"};
    s.odes = {parse("-c*w + 5/3*w^3 + 5*k^2*w*D(w, xi, 2) + k^4*D(w, xi, 4)")};
    s.solve_unknowns = {"A0", "A1", "A2", "c"};
    s.free_parameters = {"k"};
    s.transform = {sym("k"), sym("k") * sym("c"), -1, false, true};
    out.push_back(std::move(s));
  }
  return out;
}

const std::vector<EquationSpec>& specs() {
  static const std::vector<EquationSpec> s = build_specs();
  return s;
}

PrintedSet printed(std::string label, std::string paper_eq, const std::map<std::string, std::string>& values,
                   const std::map<std::string, std::string>& definitions = {}) {
  PrintedSet ps;
  ps.paper_eq = std::move(paper_eq);
  ps.set.label = std::move(label);
  ps.set.provenance = expansion::Provenance::Printed;
  for (const auto& [k, v] : values) ps.set.assignments.emplace(k, parse(v));
  for (const auto& [k, v] : definitions) ps.set.definitions.emplace(k, parse(v));
  return ps;
}

}  // namespace

const std::vector<std::string>& equation_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& s : specs()) n.push_back(s.name);
    return n;
  }();
  return names;
}

const EquationSpec& equation(const std::string& name) {
  for (const auto& s : specs()) {
    if (s.name == name) return s;
  }
  throw InvalidArgument("unknown equation '" + name + "'");
}

std::vector<PrintedSet> printed_param_sets(const std::string& name) {
  (void)equation(name);
  std::vector<PrintedSet> out;
  if (name == "burgers") {
    for (const char* sg : {"+", "-"}) {
      const std::string rad = std::string(sg) + " sqrt(r^2 - 4*p*q)";
      out.push_back(printed(std::string("printed") + sg, "(16)",
                            {{"A0", "A*k*(r " + rad + ")/2"}, {"A1", "p*A*k"}, {"c", "-A*k^2*(r " + rad + ")"}}));
    }
  } else if (name == "coupled-burgers") {
    out.push_back(printed("printed", "(31)",
                          {{"c", "-(2*L*M*B0 - r + M*r - 2*B0)/(-1 + M)"},
                           {"A0", "(-1 + L)*B0/(-1 + M)"},
                           {"A1", "-p*(-1 + L)/(-1 + L*M)"},
                           {"B1", "-p*(-1 + M)/(-1 + L*M)"}}));
  } else if (name == "foam-drainage") {
    out.push_back(printed("printed", "(45)", {{"A0", "k/2*r"}, {"A1", "k*p"}, {"c", "-k^3*p*q + 1/4*k^3*r^2"}}));
  } else if (name == "sawada-kotera") {
    out.push_back(printed("set1", "(60)",
                          {{"c", "k^4*(-8*p*q*r^2 + r^4 + 16*p^2*q^2)"},
                           {"A0", "-6*k^2*p*q"},
                           {"A1", "-6*k^2*p*r"},
                           {"A2", "-6*k^2*p^2"}}));
    for (const char* sg : {"+", "-"}) {
      out.push_back(printed(std::string("set2") + sg, "(61)",
                            {{"c", "(-5/2*k^4*r^2 + 10*k^4*p*q)*chi - 11*k^4*r^2*q*p - 1/2*k^4*r^4 + 52*k^4*p^2*q^2"},
                             {"A0", "chi*k^2"},
                             {"A1", "-6*k^2*p*r"},
                             {"A2", "-6*k^2*p^2"}},
                            {{"chi", std::string("(-(60*p*q + 15*r^2) ") + sg +
                                         " sqrt(105*r^4 - 1680*p^2*q^2 - 840*p*q*r^2))/20"}}));
    }
  }
  return out;
}

PrintedSystem printed_system(const std::string& name) {
  (void)equation(name);
  PrintedSystem ps;
  auto add = [&](const char* s) { ps.equations.push_back(parse(s)); };
  if (name == "burgers") {
    ps.paper_eq = "(15)";
    add("c*A0 - A*k^2*A1*q + k*A0^2");
    add("c*A1 + 2*k*A0*A1 - A*k^2*A1*r");
    add("k*A1^2 - A*k^2*A1*p");
  } else if (name == "coupled-burgers") {
    ps.paper_eq = "(30)";
    add("-A1*q*r - 2*A1*A0*q - L*B1*A0*q - L*A1*B0*q - c*A1*q");
    add("-2*A1^2*q - 2*A1*p*q - A1*r^2 - 2*A1*A0*r - c*A1*r - L*A1*B0*r - L*A0*B1*r - 2*L*A1*B1*q");
    add("-2*L*B1*A1*r - 2*A1*A0*p - 2*A1^2*r - c*A1*p - 3*A1*p*r - L*p*B1*A0 - L*p*B0*A1");
    add("-2*A1*p^2 - 2*A1^2*p - 2*L*B1*A1*p");
    add("-B1*q*r - 2*B1*B0*q - M*B1*A0*q - M*A1*B0*q - c*B1*q");
    add("-2*B1^2*q - 2*B1*p*q - B1*r^2 - 2*B1*B0*r - c*B1*r - M*B1*A0*r - M*A1*B0*r - 2*M*A1*B1*q");
    add("-2*M*B1*A1*r - 2*B1*B0*p - 2*B1^2*r - c*B1*p - 3*B1*p*r - M*p*B1*A0 - M*p*B0*A1");
    add("-2*B1*p^2 - 2*B1^2*p - 2*M*B1*A1*p");
  }
  return ps;
}

}  // namespace fracwave::registry
