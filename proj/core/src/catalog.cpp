#include "fracwave/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "fracwave/calculus.hpp"
#include "fracwave/error.hpp"
#include "fracwave/eval.hpp"
#include "fracwave/parse.hpp"
#include "fracwave/registry.hpp"

namespace fracwave::catalog {

using symexpr::parse;
using symexpr::Rational;
using symexpr::substitute;
using symexpr::sym;
using symexpr::SymbolBindings;

namespace {

constexpr double kExactTol = 1e-12;

SolutionBranch make_branch(BranchId id, std::string name, std::string type, std::string eq,
                           std::vector<std::string> constraints, SymbolBindings spec, const char* closed) {
  SolutionBranch b{id, std::move(name), std::move(type), std::move(eq), std::move(constraints), std::move(spec),
                   parse(closed)};
  b.closed_form = substitute(b.closed_form, b.specialization);
  return b;
}

std::vector<SolutionBranch> build_branches() {
  const Expr one(1);
  const Expr zero(0);
  std::vector<SolutionBranch> out;
  out.push_back(make_branch(BranchId::T1a, "T1a", "Type 1", "(9a)", {"p = 1", "q != 0", "r^2 - 4*q > 0"},
                            {{"p", one}},
                            "-2*q/(sqrt(r^2 - 4*q)*tanh(1/2*sqrt(r^2 - 4*q)*(xi + xi0)) + r)"));
  out.push_back(make_branch(BranchId::T1b, "T1b", "Type 1", "(9b)", {"p = 1", "q != 0", "r^2 - 4*q < 0"},
                            {{"p", one}}, "2*q/(sqrt(4*q - r^2)*tan(1/2*sqrt(4*q - r^2)*(xi + xi0)) - r)"));
  out.push_back(make_branch(BranchId::T1c, "T1c", "Type 1", "(9c)", {"p = 1", "q = 0", "r != 0"},
                            {{"p", one}, {"q", zero}}, "r/(exp(r*(xi + xi0)) - 1)"));
  out.push_back(make_branch(BranchId::T1d, "T1d", "Type 1", "(9d)",
                            {"p = 1", "q != 0", "r != 0", "r^2 - 4*q = 0"},
                            {{"p", one}, {"q", parse("r^2/4")}}, "-r^2*(xi + xi0)/(2*r*(xi + xi0) + 4)"));
  out.push_back(make_branch(BranchId::T2tan, "T2tan", "Type 2", "(9f)", {"r = 0", "p > 0", "q > 0"},
                            {{"r", zero}}, "-sqrt(p*q)/p*tan(sqrt(p*q)*(xi + xi0))"));
  out.push_back(make_branch(BranchId::T2cot, "T2cot", "Type 2", "(9e)", {"r = 0", "p > 0", "q > 0"},
                            {{"r", zero}}, "sqrt(p*q)/p*cot(sqrt(p*q)*(xi + xi0))"));
  out.push_back(make_branch(BranchId::T2tanh, "T2tanh", "Type 2", "(9h)", {"r = 0", "p*q < 0"}, {{"r", zero}},
                            "sqrt(-p*q)/p*tanh(sqrt(-p*q)*(xi + xi0))"));
  out.push_back(make_branch(BranchId::T2coth, "T2coth", "Type 2", "(9g)", {"r = 0", "p*q < 0"}, {{"r", zero}},
                            "sqrt(-p*q)/p*coth(sqrt(-p*q)*(xi + xi0))"));
  out.push_back(make_branch(BranchId::T3, "T3", "Type 3", "(9i)", {"q = 0", "r = 0", "p != 0"},
                            {{"q", zero}, {"r", zero}}, "1/(p*(xi + xi0))"));
  return out;
}

bool near(double a, double b) { return std::abs(a - b) <= kExactTol * std::max({1.0, std::abs(a), std::abs(b)}); }

/// Distance from u to the lattice u0 + n*period.
double lattice_distance(double u, double u0, double period) {
  return std::abs(std::remainder(u - u0, period));
}

}  // namespace

const std::vector<SolutionBranch>& branches() {
  static const std::vector<SolutionBranch> b = build_branches();
  return b;
}

const SolutionBranch& branch(BranchId id) { return branches().at(static_cast<std::size_t>(id)); }

std::string_view branch_name(BranchId id) { return branch(id).name; }

std::optional<BranchId> branch_from_name(std::string_view name) {
  for (const auto& b : branches()) {
    if (b.name == name) return b.id;
  }
  return std::nullopt;
}

void check_constraints(BranchId id, const AuxParams& a) {
  const auto fail = [&](const std::string& what) {
    throw ConstraintError(std::string(branch_name(id)) + " requires " + what);
  };
  for (double v : {a.p, a.q, a.r, a.xi0}) {
    if (!std::isfinite(v)) fail("finite parameters");
  }
  const double disc = a.r * a.r - 4.0 * a.q;
  switch (id) {
    case BranchId::T1a:
      if (!near(a.p, 1.0)) fail("p = 1");
      if (a.q == 0.0) fail("q != 0");
      if (!(disc > 0.0)) fail("r^2 - 4*q > 0");
      break;
    case BranchId::T1b:
      if (!near(a.p, 1.0)) fail("p = 1");
      if (a.q == 0.0) fail("q != 0");
      if (!(disc < 0.0)) fail("r^2 - 4*q < 0");
      break;
    case BranchId::T1c:
      if (!near(a.p, 1.0)) fail("p = 1");
      if (a.q != 0.0) fail("q = 0");
      if (a.r == 0.0) fail("r != 0");
      break;
    case BranchId::T1d:
      if (!near(a.p, 1.0)) fail("p = 1");
      if (a.q == 0.0) fail("q != 0");
      if (a.r == 0.0) fail("r != 0");
      if (!near(a.r * a.r, 4.0 * a.q)) fail("r^2 - 4*q = 0");
      break;
    case BranchId::T2tan:
    case BranchId::T2cot:
      if (a.r != 0.0) fail("r = 0");
      if (!(a.p > 0.0)) fail("p > 0");
      if (!(a.q > 0.0)) fail("q > 0");
      break;
    case BranchId::T2tanh:
    case BranchId::T2coth:
      if (a.r != 0.0) fail("r = 0");
      if (!(a.p * a.q < 0.0)) fail("p*q < 0");
      break;
    case BranchId::T3:
      if (a.q != 0.0) fail("q = 0");
      if (a.r != 0.0) fail("r = 0");
      if (a.p == 0.0) fail("p != 0");
      break;
  }
}

bool satisfies(BranchId id, const AuxParams& a) {
  try {
    check_constraints(id, a);
    return true;
  } catch (const ConstraintError&) {
    return false;
  }
}

Expr bind_exact(const Expr& e, const NumericBindings& b) {
  SymbolBindings s;
  for (const auto& [name, v] : b) {
    if (!std::isfinite(v)) throw InvalidArgument("parameter " + name + " is not finite");
    s.emplace(name, Expr(Rational::from_double(v)));
  }
  return substitute(e, s);
}

Expr aux_exp_neg_phi(BranchId id, const AuxParams& a) {
  check_constraints(id, a);
  return bind_exact(branch(id).closed_form, {{"p", a.p}, {"q", a.q}, {"r", a.r}, {"xi0", a.xi0}});
}

bool near_pole(BranchId id, const AuxParams& a, double xi, double guard) {
  const double th = xi + a.xi0;
  switch (id) {
    case BranchId::T1a: {
      const double s = std::sqrt(a.r * a.r - 4.0 * a.q);
      const double t = -a.r / s;
      if (std::abs(t) >= 1.0) return false;
      return std::abs(th - 2.0 * std::atanh(t) / s) < guard;
    }
    case BranchId::T1b: {
      const double s = std::sqrt(4.0 * a.q - a.r * a.r);
      return lattice_distance(0.5 * s * th, std::atan(a.r / s), std::numbers::pi) * 2.0 / s < guard;
    }
    case BranchId::T1c:
    case BranchId::T3:
    case BranchId::T2coth:
      return std::abs(th) < guard;
    case BranchId::T1d:
      return std::abs(th + 2.0 / a.r) < guard;
    case BranchId::T2tan: {
      const double s = std::sqrt(a.p * a.q);
      return lattice_distance(s * th, 0.5 * std::numbers::pi, std::numbers::pi) / s < guard;
    }
    case BranchId::T2cot: {
      const double s = std::sqrt(a.p * a.q);
      return lattice_distance(s * th, 0.0, std::numbers::pi) / s < guard;
    }
    case BranchId::T2tanh:
      return false;
  }
  return false;
}

bool near_zero(BranchId id, const AuxParams& a, double xi, double guard) {
  const double th = xi + a.xi0;
  switch (id) {
    case BranchId::T1b: {
      const double s = std::sqrt(4.0 * a.q - a.r * a.r);
      return lattice_distance(0.5 * s * th, 0.5 * std::numbers::pi, std::numbers::pi) * 2.0 / s < guard;
    }
    case BranchId::T1d:
    case BranchId::T2tanh:
      return std::abs(th) < guard;
    case BranchId::T2tan: {
      const double s = std::sqrt(a.p * a.q);
      return lattice_distance(s * th, 0.0, std::numbers::pi) / s < guard;
    }
    case BranchId::T2cot: {
      const double s = std::sqrt(a.p * a.q);
      return lattice_distance(s * th, 0.5 * std::numbers::pi, std::numbers::pi) / s < guard;
    }
    default:
      return false;
  }
}

double draw_value(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
  const double v = std::round((lo + u * (hi - lo)) * 16.0) / 16.0;
  return std::clamp(v, std::ceil(lo * 16.0) / 16.0, std::floor(hi * 16.0) / 16.0);
}

namespace {

double draw_signed(std::mt19937_64& rng, double lo, double hi) {
  const double m = draw_value(rng, lo, hi);
  return (rng() & 1U) ? -m : m;
}

}  // namespace

AuxParams draw_aux(BranchId id, std::mt19937_64& rng) {
  AuxParams a;
  a.xi0 = draw_value(rng, -1.0, 1.0);
  switch (id) {
    case BranchId::T1a:
      do {
        a.r = draw_value(rng, -2.0, 2.0);
        a.q = draw_signed(rng, 0.25, 2.0);
      } while (a.r * a.r - 4.0 * a.q < 0.25);
      break;
    case BranchId::T1b:
      do {
        a.q = draw_value(rng, 0.25, 2.0);
        a.r = draw_value(rng, -2.0, 2.0);
      } while (4.0 * a.q - a.r * a.r < 0.25);
      break;
    case BranchId::T1c:
      a.r = draw_signed(rng, 0.25, 2.0);
      break;
    case BranchId::T1d:
      a.r = draw_signed(rng, 0.25, 2.0);
      a.q = a.r * a.r / 4.0;
      break;
    case BranchId::T2tan:
    case BranchId::T2cot:
      a.p = draw_value(rng, 0.25, 2.0);
      a.q = draw_value(rng, 0.25, 2.0);
      break;
    case BranchId::T2tanh:
    case BranchId::T2coth:
      a.p = draw_signed(rng, 0.25, 2.0);
      a.q = -std::copysign(draw_value(rng, 0.25, 2.0), a.p);
      break;
    case BranchId::T3:
      a.p = draw_signed(rng, 0.25, 2.0);
      break;
  }
  return a;
}

AuxParams aux_of(const NumericBindings& b) {
  AuxParams a;
  const auto get = [&](const char* n, double dflt) {
    const auto it = b.find(n);
    return it == b.end() ? dflt : it->second;
  };
  a.p = get("p", 1.0);
  a.q = get("q", 0.0);
  a.r = get("r", 0.0);
  a.xi0 = get("xi0", 0.0);
  return a;
}

Expr wave_coordinate_expr(const expansion::TransformTemplate& t, const Expr& speed) {
  const Expr alpha = sym("alpha");
  const Expr beta = t.beta_equals_alpha ? alpha : sym("beta");
  const auto frac_power = [](const Expr& var, const Expr& order) {
    return apply(symexpr::Func::Exp, order * apply(symexpr::Func::Ln, var)) /
           apply(symexpr::Func::Gamma, Expr(1) + order);
  };
  const Expr xpart = t.beta_is_one ? sym("x") : frac_power(sym("x"), beta);
  const Expr c = substitute(t.speed, {{"c", speed}});
  return t.k * xpart + Expr(t.sign) * c * frac_power(sym("t"), alpha);
}

namespace {

struct PrintedForms {
  std::string paper_eq;
  std::vector<const char*> profiles;
  const char* speed;
};

using PrintedTable = std::map<BranchId, PrintedForms>;

PrintedTable printed_burgers() {
  const char* c1 = "-A*k^2*(r + sqrt(r^2 - 4*q))";
  return {
      {BranchId::T1a,
       {"(17)",
        {"A*k*((r + sqrt(r^2 - 4*q))/2 - 2*q/(sqrt(r^2 - 4*q)*tanh(0.5*sqrt(r^2 - 4*q)*(xi + xi0)) + r))"},
        c1}},
      {BranchId::T1b,
       {"(18)",
        {"A*k*((r + sqrt(r^2 - 4*q))/2 + 2*q/(sqrt(-(r^2 - 4*q))*tan(0.5*sqrt(-(r^2 - 4*q))*(xi + xi0)) - r))"},
        c1}},
      {BranchId::T1c, {"(19)", {"A*k*((r + sqrt(r^2 - 4*q))/2 + r/(exp(r*(xi + xi0)) - 1))"}, c1}},
      {BranchId::T1d, {"(20)", {"A*k*((r + sqrt(r^2 - 4*q))/2 - r^2*(xi + xi0)/(2*r*(xi + xi0) + 4))"}, c1}},
      {BranchId::T2tanh,
       {"(21)", {"A*k*sqrt(-p*q)*(1 - tanh(sqrt(-p*q)*(xi + xi0)))"}, "-2*A*k^2*sqrt(-p*q)"}},
      {BranchId::T2coth,
       {"(22)", {"A*k*sqrt(-p*q)*(1 - coth(sqrt(-p*q)*(xi + xi0)))"}, "-2*A*k^2*sqrt(-p*q)"}},
      {BranchId::T2tan,
       {"(23)", {"A*k*(sqrt(-p*q) - sqrt(p*q)*tan(sqrt(p*q)*(xi + xi0)))"}, "-2*A*k^2*sqrt(-p*q)"}},
      {BranchId::T2cot, {"(24)", {"A*k*sqrt(p*q)*(1 + cot(sqrt(p*q)*(xi + xi0)))"}, "-2*A*k^2*sqrt(p*q)"}},
      {BranchId::T3,
       {"(25)", {"A*k*((r + sqrt(r^2 - 4*q))/2 + 1/(xi + xi0))"}, "-A*k^2*(2*r + sqrt(r^2 - 4*q))"}},
  };
}

PrintedTable printed_coupled() {
  const char* c1 = "-(2*L*M*B0 - r + M*r - 2*B0)/(-1 + M)";
  const char* c2 = "-(2*L*M*B0 - 2*B0)/(-1 + M)";
  return {
      {BranchId::T1a,
       {"(32)",
        {"(-1 + L)*B0/(-1 + M) + (-1 + L)/(-1 + L*M)*(2*q/(sqrt(r^2 - 4*q)*tanh(0.5*sqrt(r^2 - 4*q)*(xi + xi0)) + r))",
         "B0 + (-1 + M)/(-1 + L*M)*(2*q/(sqrt(r^2 - 4*q)*tanh(0.5*sqrt(r^2 - 4*q)*(xi + xi0)) + r))"},
        c1}},
      {BranchId::T1b,
       {"(33)",
        {"(-1 + L)*B0/(-1 + M) - (-1 + L)/(-1 + L*M)*(2*q/(sqrt(4*q - r^2)*tan(0.5*sqrt(4*q - r^2)*(xi + xi0)) - r))",
         "B0 - (-1 + M)/(-1 + L*M)*(2*q/(sqrt(4*q - r^2)*tan(0.5*sqrt(4*q - r^2)*(xi + xi0)) - r))"},
        c1}},
      {BranchId::T1c,
       {"(34)",
        {"(-1 + L)*B0/(-1 + M) - (-1 + L)/(-1 + L*M)*(r/(exp(r*(xi + xi0)) - 1))",
         "B0 - (-1 + M)/(-1 + L*M)*(r/(exp(r*(xi + xi0)) - 1))"},
        c1}},
      {BranchId::T1d,
       {"(35)",
        {"(-1 + L)*B0/(-1 + M) + (-1 + L)/(-1 + L*M)*(r^2*(xi + xi0)/(2*r*(xi + xi0) + 4))",
         "B0 + (-1 + M)/(-1 + L*M)*(r^2*(xi + xi0)/(2*r*(xi + xi0) + 4))"},
        c1}},
      {BranchId::T2tan,
       {"(36)",
        {"(-1 + L)*B0/(-1 + M) + (-1 + L)/(-1 + L*M)*sqrt(p*q)*tan(sqrt(p*q)*(xi + xi0))",
         "B0 + (-1 + M)/(-1 + L*M)*sqrt(p*q)*tan(sqrt(p*q)*(xi + xi0))"},
        c2}},
      {BranchId::T2cot,
       {"(37)",
        {"(-1 + L)*B0/(-1 + M) - (-1 + L)/(-1 + L*M)*sqrt(p*q)*cot(sqrt(p*q)*(xi + xi0))",
         "B0 - (-1 + M)/(-1 + L*M)*sqrt(p*q)*cot(sqrt(p*q)*(xi + xi0))"},
        c2}},
      {BranchId::T2tanh,
       {"(38)",
        {"(-1 + L)*B0/(-1 + M) + (-1 + L)/(-1 + L*M)*sqrt(-p*q)*tanh(sqrt(-p*q)*(xi + xi0))",
         "B0 + (-1 + M)/(-1 + L*M)*sqrt(-p*q)*tanh(sqrt(-p*q)*(xi + xi0))"},
        c2}},
      {BranchId::T2coth,
       {"(39)",
        {"(-1 + L)*B0/(-1 + M) + (-1 + L)/(-1 + L*M)*sqrt(-p*q)*coth(sqrt(-p*q)*(xi + xi0))",
         "B0 + (-1 + M)/(-1 + L*M)*sqrt(-p*q)*coth(sqrt(-p*q)*(xi + xi0))"},
        c2}},
      {BranchId::T3,
       {"(40)",
        {"(-1 + L)*B0/(-1 + M) - (-1 + L)/(-1 + L*M)/(xi + xi0)", "B0 - (-1 + M)/(-1 + L*M)/(xi + xi0)"},
        c2}},
  };
}

PrintedTable printed_foam() {
  const char* c1 = "(-4*k^3*q + k^3*r^2)/4";
  const char* c2 = "-k^3*p*q";
  return {
      {BranchId::T1a,
       {"(46)", {"k/2*r - k*(2*q/(sqrt(r^2 - 4*q)*tanh(0.5*sqrt(r^2 - 4*q)*(xi + xi0)) + r))"}, c1}},
      {BranchId::T1b,
       {"(47)", {"k/2*r + k*(2*q/(sqrt(4*q - r^2)*tan(0.5*sqrt(4*q - r^2)*(xi + xi0)) - r))"}, c1}},
      {BranchId::T1c, {"(48)", {"k/2*r + k*(r/(exp(r*(xi + xi0)) - 1))"}, c1}},
      {BranchId::T1d, {"(49)", {"k/2*r - k*(r^2*(xi + xi0)/(2*r*(xi + xi0) + 4))"}, c1}},
      {BranchId::T2tan, {"(50)", {"-k*sqrt(p*q)*tan(sqrt(p*q)*(xi + xi0))"}, c2}},
      {BranchId::T2cot, {"(51)", {"k*sqrt(p*q)*cot(sqrt(p*q)*(xi + xi0))"}, c2}},
      {BranchId::T2tanh, {"(52)", {"-k*sqrt(-p*q)*tanh(sqrt(-p*q)*(xi + xi0))"}, c2}},
      {BranchId::T2coth, {"(53)", {"-k*sqrt(-p*q)*coth(sqrt(-p*q)*(xi + xi0))"}, c2}},
      {BranchId::T3, {"(54)", {"k/(xi + xi0)"}, c1}},
  };
}

PrintedTable printed_sk() {
  const char* c1 = "k^4*(-8*q*r^2 + r^4 + 16*q^2)";
  const char* c2 = "k^4*16*p^2*q^2";
  return {
      {BranchId::T1a,
       {"(62)",
        {"-6*k^2*q + 6*k^2*r*(q/(sqrt(r^2 - 4*q)*tanh(0.5*sqrt(r^2 - 4*q)*(xi + xi0)) + r))"
         " - 6*k^2*(q/(sqrt(r^2 - 4*q)*tanh(0.5*sqrt(r^2 - 4*q)*(xi + xi0)) + r))^2"},
        c1}},
      {BranchId::T1b,
       {"(63)",
        {"-6*k^2*q - 6*k^2*r*(q/(sqrt(-(r^2 - 4*q))*tan(0.5*sqrt(-(r^2 - 4*q))*(xi + xi0)) - r))"
         " - 6*k^2*(2*q/(sqrt(-(r^2 - 4*q))*tan(0.5*sqrt(-(r^2 - 4*q))*(xi + xi0)) - r))^2"},
        c1}},
      {BranchId::T1c,
       {"(64)", {"-6*k^2*(r^2/(exp(r*(xi + xi0)) - 1)) - 6*k^2*(r/(exp(r*(xi + xi0)) - 1))^2"}, c1}},
      {BranchId::T1d,
       {"(65)",
        {"-6*k^2*q + 6*k^2*(r^3*(xi + xi0)/(2*r*(xi + xi0) + 4))"
         " - 6*k^2*(r^2*(xi + xi0)/(2*r*(xi + xi0) + 4))^2"},
        c1}},
      {BranchId::T2tan, {"(66)", {"-6*k^2*p*q - 6*k^2*p*q*tan(sqrt(p*q)*(xi + xi0))^2"}, c2}},
      {BranchId::T2cot, {"(67)", {"-6*k^2*p*q - 6*k^2*p*q*cot(sqrt(p*q)*(xi + xi0))^2"}, c2}},
      {BranchId::T2tanh, {"(68)", {"-6*k^2*p*q + 6*k^2*p*q*tanh(sqrt(-p*q)*(xi + xi0))^2"}, c2}},
      {BranchId::T2coth, {"(69)", {"-6*k^2*p*q + 6*k^2*p*q*coth(sqrt(-p*q)*(xi + xi0))^2"}, c2}},
  };
}

const PrintedTable& printed_table(const std::string& equation) {
  static const std::map<std::string, PrintedTable> tables = {{"burgers", printed_burgers()},
                                                             {"coupled-burgers", printed_coupled()},
                                                             {"foam-drainage", printed_foam()},
                                                             {"sawada-kotera", printed_sk()}};
  return tables.at(equation);
}

struct ConstantRange {
  std::string name;
  double lo;
  double hi;
  bool either_sign;
};

std::vector<ConstantRange> constant_ranges(const std::string& equation) {
  if (equation == "burgers") return {{"A", 0.5, 2.0, true}, {"k", 0.5, 1.5, true}};
  if (equation == "coupled-burgers") return {{"L", -2.0, 2.0, false}, {"M", -2.0, 2.0, false}, {"B0", -1.0, 1.0, false}};
  if (equation == "sawada-kotera") return {{"k", 0.5, 1.25, true}};
  return {{"k", 0.5, 1.5, true}};
}

Expr specialize(const Expr& e, const SolutionBranch& b) { return substitute(e, b.specialization); }

std::string condition_text(const Expr& e) { return e.str() + " != 0"; }

void add_constraint(std::vector<std::string>& out, std::string c) {
  if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
}

/// Cancelled single fraction with squared radicals rewritten.
Expr tidy(const Expr& e) {
  const auto f = symexpr::cancel(symexpr::eliminate_radical_squares(e));
  return f.denominator.is_one() ? f.numerator : f.numerator / f.denominator;
}

/// True when some coefficient takes a complex value at a representative draw.
bool has_complex_coefficients(const SolutionFamily& f) {
  std::mt19937_64 rng(0x5eed0001);
  const NumericBindings b = draw_parameters(f, rng);
  std::vector<Expr> coeffs{f.wave_speed};
  for (const auto& [k, v] : f.assignments) coeffs.push_back(v);
  for (const auto& c : coeffs) {
    const auto v = symexpr::eval_complex(c, b);
    if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v))) return true;
  }
  return false;
}

ParamSet specialize_set(const ParamSet& ps, const SolutionBranch& b) {
  ParamSet out = ps;
  for (auto& [k, v] : out.assignments) v = specialize(v, b);
  for (auto& [k, v] : out.definitions) v = specialize(v, b);
  for (auto& c : out.side_conditions) c = specialize(c, b);
  return out;
}

}  // namespace

SolutionFamily compose_solution(const EquationSpec& spec, BranchId id, const ParamSet& ps) {
  const SolutionBranch& br = branch(id);
  const int N = expansion::balance_degree(spec);
  const auto resolved = ps.resolved();

  SolutionFamily f;
  f.equation = spec.name;
  f.branch = id;
  f.set_label = ps.label;
  f.id = spec.name + ":" + br.name;
  f.functions = spec.functions;
  f.transform = spec.transform;
  for (const auto& c : br.constraints) f.constraints.push_back(c);

  for (const auto& u : spec.solve_unknowns) {
    const auto it = resolved.find(u);
    if (it == resolved.end()) throw InvalidArgument("parameter set '" + ps.label + "' leaves " + u + " unassigned");
    f.assignments.emplace(u, tidy(specialize(it->second, br)));
  }
  for (const auto& c : ps.side_conditions) {
    const Expr s = specialize(c, br);
    if (s.is_zero()) throw ConstraintError("side condition " + c.str() + " vanishes on branch " + br.name);
    if (!s.is_number()) add_constraint(f.constraints, condition_text(s));
  }

  SymbolBindings coeffs;
  for (const auto& [k, v] : f.assignments) coeffs.emplace(k, v);
  const Expr E = br.closed_form;
  const auto speed_it = f.assignments.find("c");
  f.wave_speed = speed_it != f.assignments.end() ? speed_it->second : sym("c");
  const Expr xi = wave_coordinate_expr(spec.transform, f.wave_speed);

  for (std::size_t i = 0; i < spec.functions.size(); ++i) {
    const auto ans = expansion::build_ansatz(N, spec.functions[i], spec.ansatz_prefixes[i]);
    std::vector<Expr> terms;
    for (int j = 0; j <= N; ++j) {
      const Expr a = substitute(sym(ans.coefficients[static_cast<std::size_t>(j)]), coeffs);
      terms.push_back(j == 0 ? a : a * pow(E, j));
    }
    const Expr profile = symexpr::make_sum(std::move(terms));
    f.profiles.push_back(profile);
    f.fields.push_back(substitute(profile, {{spec.variable, xi}}));
  }
  f.complex_valued = has_complex_coefficients(f);
  return f;
}

namespace {

struct Recipe {
  std::string equation;
  std::string set_label;
  bool from_solver;
};

std::vector<SolutionFamily> build_families(const std::string& equation) {
  static const std::vector<Recipe> recipes = {{"burgers", "derived+", true},
                                              {"coupled-burgers", "derived", true},
                                              {"foam-drainage", "derived", true},
                                              {"sawada-kotera", "set1", false}};
  const EquationSpec& spec = registry::equation(equation);
  const auto recipe = std::find_if(recipes.begin(), recipes.end(), [&](const Recipe& r) { return r.equation == equation; });
  const auto sys = expansion::derive_system(spec);

  std::vector<ParamSet> candidates;
  if (recipe->from_solver) {
    for (auto& ps : expansion::solve_triangular(sys).param_sets) candidates.push_back(std::move(ps));
  } else {
    for (auto& p : registry::printed_param_sets(equation)) candidates.push_back(std::move(p.set));
  }
  const auto primary = std::find_if(candidates.begin(), candidates.end(),
                                    [&](const ParamSet& p) { return p.label == recipe->set_label; });
  if (primary == candidates.end()) throw Error("no parameter set '" + recipe->set_label + "' for " + equation);

  const PrintedTable& printed = printed_table(equation);
  std::vector<SolutionFamily> out;
  for (const auto& br : branches()) {
    const auto pf = printed.find(br.id);
    if (!recipe->from_solver && pf == printed.end()) continue;
    SolutionFamily f = compose_solution(spec, br.id, *primary);
    if (pf != printed.end()) {
      f.paper_eq = pf->second.paper_eq;
      for (const char* s : pf->second.profiles) f.printed_profiles.push_back(parse(s));
      f.printed_speed = parse(pf->second.speed);
    }
    out.push_back(std::move(f));
  }

  // Remaining sets of a printed-only equation are composed where they verify
  // on the specialized branch.
  if (!recipe->from_solver) {
    std::vector<std::map<std::string, Expr>> seen;
    for (const auto& ps : candidates) {
      if (ps.label == recipe->set_label) continue;
      for (const auto& br : branches()) {
        const ParamSet sp = specialize_set(ps, br);
        expansion::AlgebraicSystem ss = sys;
        for (auto& e : ss.equations) e = symexpr::expand_normalize(specialize(e, br));
        if (expansion::verify_param_set(ss, sp).verdict != expansion::Verdict::Verified) continue;
        std::map<std::string, Expr> key = sp.resolved();
        key.emplace("#branch", Expr(static_cast<std::int64_t>(br.id)));
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(key);
        SolutionFamily f = compose_solution(spec, br.id, ps);
        f.id = equation + ":" + ps.label + ":" + br.name;
        out.push_back(std::move(f));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<SolutionFamily> builtin_families(const std::string& equation) {
  (void)registry::equation(equation);
  static const std::map<std::string, std::vector<SolutionFamily>> all = [] {
    std::map<std::string, std::vector<SolutionFamily>> m;
    for (const auto& n : registry::equation_names()) m.emplace(n, build_families(n));
    return m;
  }();
  return all.at(equation);
}

SolutionFamily find_family(const std::string& equation, const std::string& selector) {
  const auto fams = builtin_families(equation);
  for (const auto& f : fams) {
    if (f.id == selector || f.id == equation + ":" + selector) return f;
  }
  throw InvalidArgument("unknown family '" + selector + "' for " + equation);
}

NumericBindings draw_parameters(const SolutionFamily& f, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const AuxParams a = draw_aux(f.branch, rng);
    NumericBindings b{{"p", a.p}, {"q", a.q}, {"r", a.r}, {"xi0", a.xi0}};
    for (const auto& c : constant_ranges(f.equation)) {
      b[c.name] = c.either_sign ? draw_signed(rng, c.lo, c.hi) : draw_value(rng, c.lo, c.hi);
    }
    try {
      check_family_parameters(f, b);
      return b;
    } catch (const Error&) {
    }
  }
  throw ConvergenceError("no admissible parameter draw for " + f.id);
}

void check_family_parameters(const SolutionFamily& f, const NumericBindings& b) {
  check_constraints(f.branch, aux_of(b));
  const auto eb = [&] {
    NumericBindings full = b;
    const SolutionBranch& br = branch(f.branch);
    for (const auto& [k, v] : br.specialization) full[k] = symexpr::eval_numeric(v, b);
    return full;
  }();
  for (const auto& c : f.constraints) {
    const auto pos = c.find(" != 0");
    if (pos == std::string::npos) continue;
    const Expr e = parse(c.substr(0, pos));
    const auto free = symexpr::free_symbols(e);
    if (std::any_of(free.begin(), free.end(), [&](const std::string& s) { return !eb.count(s); })) continue;
    const auto v = symexpr::eval_complex(e, eb);
    if (std::abs(v) < 1e-9) throw ConstraintError(f.id + " requires " + c);
  }
}

}  // namespace fracwave::catalog
