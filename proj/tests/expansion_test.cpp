#include <gtest/gtest.h>

#include "fracwave/calculus.hpp"
#include "fracwave/error.hpp"
#include "fracwave/expansion.hpp"
#include "fracwave/parse.hpp"
#include "fracwave/registry.hpp"

using namespace fracwave;
using namespace fracwave::expansion;
using symexpr::parse;

namespace {

void expect_equivalent(const Expr& a, const Expr& b) {
  EXPECT_TRUE(symexpr::expand_normalize(a - b).is_zero()) << a.str() << "  vs  " << b.str();
}

const ParamSet& only_set(const SolveOutcome& s) {
  EXPECT_EQ(s.param_sets.size(), 1u);
  return s.param_sets.front();
}

}  // namespace

TEST(Balance, RegisteredEquations) {
  EXPECT_EQ(balance_degree(registry::equation("burgers")), 1);
  EXPECT_EQ(balance_degree(registry::equation("coupled-burgers")), 1);
  EXPECT_EQ(balance_degree(registry::equation("foam-drainage")), 1);
  EXPECT_EQ(balance_degree(registry::equation("sawada-kotera")), 2);
}

TEST(Balance, LinearEquationHasNoBalance) {
  EquationSpec s;
  s.name = "linear";
  s.functions = {"w"};
  s.ansatz_prefixes = {"A"};
  s.odes = {parse("D(w, xi, 2) + c*w")};
  EXPECT_THROW(balance_degree(s), InvalidArgument);
}

TEST(Ansatz, Shapes) {
  expect_equivalent(build_ansatz(1, "w", "A").expr, parse("A0 + A1*E"));
  const Ansatz a2 = build_ansatz(2, "w", "A");
  expect_equivalent(a2.expr, parse("A0 + A1*E + A2*E^2"));
  EXPECT_EQ(a2.coefficients, (std::vector<std::string>{"A0", "A1", "A2"}));
  EXPECT_THROW(build_ansatz(0, "w", "A"), InvalidArgument);
}

TEST(Kernel, DerivationRule) {
  const auto d1 = derive_kernel({{1, Expr(1)}});
  expect_equivalent(from_kernel_poly(d1), parse("-(p*E^2 + r*E + q)"));
  const auto d2 = derive_kernel({{2, Expr(1)}});
  expect_equivalent(from_kernel_poly(d2), parse("-2*E*(p*E^2 + r*E + q)"));
  EXPECT_TRUE(from_kernel_poly(derive_kernel({{0, parse("A0")}})).is_zero());
}

TEST(Reduce, BurgersSystemMatchesPrinted) {
  const AlgebraicSystem sys = derive_system(registry::equation("burgers"));
  ASSERT_EQ(sys.equations.size(), 3u);
  expect_equivalent(sys.equations[0], parse("c*A0 - A*k^2*A1*q + k*A0^2"));
  expect_equivalent(sys.equations[1], parse("c*A1 + 2*k*A0*A1 - A*k^2*A1*r"));
  expect_equivalent(sys.equations[2], parse("k*A1^2 - A*k^2*A1*p"));
  const auto printed = registry::printed_system("burgers");
  for (const auto& m : compare_systems(sys, printed.equations)) {
    EXPECT_TRUE(m.derived_index.has_value());
    EXPECT_TRUE(m.difference.is_zero());
  }
}

TEST(Reduce, CoupledSystemHasEightEquations) {
  const AlgebraicSystem sys = derive_system(registry::equation("coupled-burgers"));
  EXPECT_EQ(sys.equations.size(), 8u);
  const auto printed = registry::printed_system("coupled-burgers");
  ASSERT_EQ(printed.equations.size(), 8u);
  for (const auto& m : compare_systems(sys, printed.equations)) EXPECT_TRUE(m.derived_index.has_value());
}

TEST(Reduce, ZeroAnsatzGivesEmptySystem) {
  const auto& spec = registry::equation("burgers");
  Ansatz zero = build_ansatz(1, "w", "A");
  zero.expr = Expr();
  const auto polys = reduce_to_polynomial(spec, {zero});
  for (const auto& p : polys) {
    for (const auto& [deg, c] : p) EXPECT_TRUE(c.is_zero()) << deg;
  }
  EXPECT_TRUE(extract_system(polys, {"A0", "A1", "c"}).equations.empty());
}

TEST(Solve, BurgersBackSubstitutes) {
  const AlgebraicSystem sys = derive_system(registry::equation("burgers"));
  const SolveOutcome out = solve_triangular(sys);
  ASSERT_FALSE(out.param_sets.empty());
  for (const auto& ps : out.param_sets) {
    expect_equivalent(ps.assignments.at("A1"), parse("A*k*p"));
    EXPECT_EQ(verify_param_set(sys, ps).verdict, Verdict::Verified) << ps.label;
  }
}

TEST(Solve, FoamMatchesPrintedSet) {
  const AlgebraicSystem sys = derive_system(registry::equation("foam-drainage"));
  const SolveOutcome out = solve_triangular(sys);
  const ParamSet& ps = only_set(out);
  expect_equivalent(ps.assignments.at("A0"), parse("k*r/2"));
  expect_equivalent(ps.assignments.at("A1"), parse("k*p"));
  expect_equivalent(ps.assignments.at("c"), parse("-k^3*p*q + k^3*r^2/4"));
  EXPECT_EQ(verify_param_set(sys, ps).verdict, Verdict::Verified);
}

TEST(Solve, SawadaKoteraIsVerificationOnly) {
  const SolveOutcome out = solve_triangular(derive_system(registry::equation("sawada-kotera")));
  EXPECT_TRUE(out.verification_only);
  EXPECT_TRUE(out.param_sets.empty());
  EXPECT_FALSE(out.note.empty());
}

TEST(VerifySet, PerturbationIsRefuted) {
  const AlgebraicSystem sys = derive_system(registry::equation("burgers"));
  ParamSet ps = solve_triangular(sys).param_sets.front();
  ps.assignments["A1"] = ps.assignments["A1"] + Expr(1);
  const VerificationReport rep = verify_param_set(sys, ps);
  EXPECT_EQ(rep.verdict, Verdict::Refuted);
  ASSERT_EQ(rep.checks.size(), 3u);
  EXPECT_EQ(rep.checks[2].label, "E^2");
  EXPECT_EQ(rep.checks[2].status, ResidualStatus::Nonzero);
}

TEST(VerifySet, PrintedSetsHaveDeterministicVerdicts) {
  for (const auto& name : registry::equation_names()) {
    const AlgebraicSystem sys = derive_system(registry::equation(name));
    for (const auto& p : registry::printed_param_sets(name)) {
      const Verdict a = verify_param_set(sys, p.set).verdict;
      const Verdict b = verify_param_set(sys, p.set).verdict;
      EXPECT_EQ(a, b) << name << " " << p.paper_eq;
    }
  }
}

TEST(VerifySet, PrintedBurgersSpeedIsRefuted) {
  const AlgebraicSystem sys = derive_system(registry::equation("burgers"));
  const auto printed = registry::printed_param_sets("burgers");
  ASSERT_FALSE(printed.empty());
  const VerificationReport rep = verify_param_set(sys, printed.front().set);
  EXPECT_EQ(rep.verdict, Verdict::Refuted);
}

TEST(VerifySet, PrintedCoupledAndFoamSetsVerify) {
  for (const std::string name : {"coupled-burgers", "foam-drainage"}) {
    const AlgebraicSystem sys = derive_system(registry::equation(name));
    for (const auto& p : registry::printed_param_sets(name)) {
      EXPECT_EQ(verify_param_set(sys, p.set).verdict, Verdict::Verified) << name << " " << p.paper_eq;
    }
  }
}

TEST(Registry, UnknownEquation) { EXPECT_THROW(registry::equation("kdv"), InvalidArgument); }
