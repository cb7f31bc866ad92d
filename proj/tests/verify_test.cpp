#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "fracwave/error.hpp"
#include "fracwave/parse.hpp"
#include "fracwave/registry.hpp"
#include "fracwave/verify.hpp"

using namespace fracwave;
using namespace fracwave::verify;

namespace {

const std::vector<double> kSamples = sample_points(-3.0, 3.0, 60);

}  // namespace

TEST(Samples, Midpoints) {
  const auto s = sample_points(0.0, 1.0, 4);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_DOUBLE_EQ(s.front(), 0.125);
  EXPECT_DOUBLE_EQ(s.back(), 0.875);
}

TEST(Decide, Rules) {
  ResidualReport r;
  r.tolerance = 1e-6;
  r.samples = 10;
  r.scaled = 1e-7;
  r.decide();
  EXPECT_EQ(r.verdict, Outcome::Pass);
  r.scaled = 1e-5;
  r.decide();
  EXPECT_EQ(r.verdict, Outcome::Fail);
  r.scaled = NAN;
  r.decide();
  EXPECT_EQ(r.verdict, Outcome::Fail);
  r.scaled = 0.0;
  r.skipped = 3;
  r.decide();
  EXPECT_EQ(r.verdict, Outcome::OutOfDomain);
  r.samples = 0;
  r.skipped = 0;
  r.decide();
  EXPECT_EQ(r.verdict, Outcome::OutOfDomain);
  EXPECT_STREQ(outcome_name(Outcome::OutOfDomain), "out-of-domain");
}

TEST(AuxResidual, TanhBranch) {
  const auto s = sample_points(-3.0, 3.0, 100);
  const ResidualReport r = aux_ode_residual(BranchId::T1a, {1.0, 1.0, 3.0, 0.0}, s);
  EXPECT_LT(r.max_residual, 1e-9);
  EXPECT_EQ(r.verdict, Outcome::Pass);
  EXPECT_THROW(aux_ode_residual(BranchId::T1b, {1.0, 1.0, 3.0, 0.0}, s), ConstraintError);
}

TEST(AuxResidual, RationalBranchSkipsPole) {
  const ResidualReport r = aux_ode_residual(BranchId::T3, {2.0, 0.0, 0.0, 0.0}, sample_points(-1.0, 1.0, 2001));
  EXPECT_GT(r.skipped, 0u);
  EXPECT_EQ(r.verdict, Outcome::Pass);
}

TEST(ReducedOde, BurgersShock) {
  const auto f = catalog::find_family("burgers", "T2tanh");
  const ResidualReport r = reduced_ode_residual(registry::equation("burgers"), f,
                                                {{"A", 1}, {"k", 1}, {"p", -1}, {"q", 1}, {"xi0", 0}}, kSamples);
  EXPECT_LT(r.scaled, 1e-8);
  EXPECT_EQ(r.verdict, Outcome::Pass);
  EXPECT_EQ(r.samples, 60u);
}

TEST(ReducedOde, SawadaKoteraSoliton) {
  const auto f = catalog::find_family("sawada-kotera", "T2tanh");
  const ResidualReport r =
      reduced_ode_residual(registry::equation("sawada-kotera"), f, {{"k", 1}, {"p", -1}, {"q", 1}, {"xi0", 0}}, kSamples);
  EXPECT_LT(r.scaled, 1e-6);
}

TEST(ReducedOde, PrintedShockWithPrintedSpeedFails) {
  const auto f = catalog::find_family("burgers", "T1a");
  ASSERT_TRUE(f.printed_speed.has_value());
  const NumericBindings b{{"A", 1}, {"k", 1}, {"p", 1}, {"q", 1}, {"r", 3}, {"xi0", 0}};
  const ResidualReport composed = reduced_ode_residual(registry::equation("burgers"), f, b, kSamples);
  const ResidualReport printed = reduced_ode_residual(registry::equation("burgers"), f, b, kSamples, true);
  EXPECT_EQ(composed.verdict, Outcome::Pass);
  EXPECT_EQ(printed.verdict, Outcome::Fail);
  EXPECT_GT(printed.scaled, 1e-3);
}

TEST(ReducedOde, WrongProfileFails) {
  const auto& spec = registry::equation("burgers");
  const ResidualReport r = profile_residual(spec, {symexpr::parse("tanh(xi)")}, symexpr::parse("1"),
                                            {{"A", 1}, {"k", 1}}, kSamples);
  EXPECT_EQ(r.verdict, Outcome::Fail);
}

TEST(Agreement, IdenticalAndDifferent) {
  const std::vector<Expr> a{symexpr::parse("tanh(xi + xi0)")};
  const std::vector<Expr> b{symexpr::parse("(exp(2*(xi + xi0)) - 1)/(exp(2*(xi + xi0)) + 1)")};
  EXPECT_EQ(pointwise_agreement(a, b, {{"xi0", 0.5}}, kSamples).verdict, Outcome::Pass);
  const std::vector<Expr> c{symexpr::parse("tanh(xi - xi0)")};
  EXPECT_EQ(pointwise_agreement(a, c, {{"xi0", 0.5}}, kSamples).verdict, Outcome::Fail);
}

TEST(Classical, ZeroFieldHasZeroResidual) {
  const FieldFn zero = [](double, double) { return std::vector<double>{0.0}; };
  const ResidualReport r = classical_residual("burgers", zero, {{"A", 1}}, Grid{});
  EXPECT_EQ(r.max_residual, 0.0);
}

TEST(Classical, ShockConvergesAtSecondOrder) {
  const auto f = catalog::find_family("burgers", "T2tanh");
  const NumericBindings b{{"A", 1}, {"k", 1}, {"p", -1}, {"q", 1}, {"xi0", 0}};
  const ResidualReport r = classical_pde_residual(f, b, Grid{});
  ASSERT_TRUE(r.convergence_ratio.has_value());
  EXPECT_GE(*r.convergence_ratio, 3.5);
  EXPECT_GE(std::log2(*r.convergence_ratio), 1.8);
  EXPECT_EQ(r.verdict, Outcome::Pass);
}

TEST(Classical, AllEquationsConverge) {
  struct Case {
    std::string equation;
    NumericBindings params;
  };
  const std::vector<Case> cases{
      {"coupled-burgers", {{"L", 0.5}, {"M", -0.5}, {"B0", 0.25}, {"p", -1}, {"q", 0.25}, {"xi0", 0}}},
      {"foam-drainage", {{"k", 1}, {"p", -1}, {"q", 0.25}, {"xi0", 0}}},
      {"sawada-kotera", {{"k", 0.5}, {"p", -1}, {"q", 1}, {"xi0", 0}}},
  };
  for (const auto& c : cases) {
    const auto f = catalog::find_family(c.equation, "T2tanh");
    const ResidualReport r = classical_pde_residual(f, c.params, Grid{});
    EXPECT_EQ(r.verdict, Outcome::Pass) << c.equation << " ratio " << r.convergence_ratio.value_or(0);
  }
}

TEST(Classical, FractionalOrderRejected) {
  const auto f = catalog::find_family("burgers", "T2tanh");
  const NumericBindings b{{"A", 1}, {"k", 1}, {"p", -1}, {"q", 1}, {"xi0", 0}};
  EXPECT_THROW(classical_pde_residual(f, b, Grid{}, 0.5, 1.0), InvalidArgument);
  Grid g;
  g.nx = 2;
  EXPECT_THROW(g.validate(), InvalidArgument);
  EXPECT_EQ(Grid{}.refined().nx, 161u);
}

TEST(Audit, EmptyInput) { EXPECT_TRUE(family_audit({}).empty()); }

TEST(Audit, BurgersEntries) {
  const auto rep = family_audit({"burgers"});
  std::set<std::string> kinds;
  std::size_t composed = 0;
  std::size_t composed_pass = 0;
  std::size_t named = 0;
  for (const auto& r : rep) {
    kinds.insert(r.kind);
    if (r.kind == "composed") {
      ++composed;
      composed_pass += r.verdict == Outcome::Pass ? 1 : 0;
    }
    if (r.kind == "equivalence" && r.subject.find(" ~ ") != std::string::npos) ++named;
    if (r.verdict == Outcome::Fail && r.kind != "aux-ode") EXPECT_TRUE(r.erratum_note.has_value()) << r.subject;
  }
  EXPECT_EQ(composed, 9u);
  EXPECT_EQ(composed_pass, 9u);
  EXPECT_GE(named, 2u);
  EXPECT_TRUE(kinds.count("aux-ode"));
  EXPECT_TRUE(kinds.count("printed-vs-composed"));
  EXPECT_TRUE(kinds.count("classical-pde"));
}

TEST(Audit, Deterministic) {
  AuditOptions o;
  o.draws = 1;
  o.samples = 20;
  const auto a = family_audit({"foam-drainage"}, o);
  const auto b = family_audit({"foam-drainage"}, o);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].subject, b[i].subject);
    EXPECT_EQ(a[i].max_residual, b[i].max_residual);
    EXPECT_EQ(a[i].params, b[i].params);
  }
}
