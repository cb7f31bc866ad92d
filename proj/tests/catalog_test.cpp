#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "fracwave/calculus.hpp"
#include "fracwave/catalog.hpp"
#include "fracwave/error.hpp"
#include "fracwave/eval.hpp"
#include "fracwave/parse.hpp"

using namespace fracwave;
using namespace fracwave::catalog;
using symexpr::eval_numeric;

namespace {

const std::vector<BranchId> kAll{BranchId::T1a,    BranchId::T1b,    BranchId::T1c,
                                 BranchId::T1d,    BranchId::T2tan,  BranchId::T2cot,
                                 BranchId::T2tanh, BranchId::T2coth, BranchId::T3};

double E_at(BranchId id, const AuxParams& a, double xi) { return eval_numeric(aux_exp_neg_phi(id, a), {{"xi", xi}}); }

double profile_at(const SolutionFamily& f, std::size_t i, const NumericBindings& b, double xi) {
  return eval_numeric(bind_exact(f.profiles.at(i), b), {{"xi", xi}});
}

}  // namespace

TEST(Branches, TableShape) {
  ASSERT_EQ(branches().size(), 9u);
  for (BranchId id : kAll) {
    EXPECT_EQ(branch(id).id, id);
    EXPECT_EQ(branch_from_name(branch_name(id)), id);
  }
  EXPECT_FALSE(branch_from_name("T4").has_value());
  EXPECT_EQ(branch(BranchId::T1a).constraints, (std::vector<std::string>{"p = 1", "q != 0", "r^2 - 4*q > 0"}));
  EXPECT_EQ(branch(BranchId::T3).constraints, (std::vector<std::string>{"q = 0", "r = 0", "p != 0"}));
  EXPECT_EQ(branch(BranchId::T2tanh).constraints, (std::vector<std::string>{"r = 0", "p*q < 0"}));
}

TEST(Branches, RationalBranch) {
  const Expr e = aux_exp_neg_phi(BranchId::T3, {2.0, 0.0, 0.0, 0.0});
  EXPECT_TRUE(symexpr::expand_normalize(e - symexpr::parse("1/(2*xi)")).is_zero()) << e.str();
}

TEST(Branches, ConstraintViolations) {
  EXPECT_THROW(check_constraints(BranchId::T1a, {1.0, 1.0, 1.0, 0.0}), ConstraintError);
  EXPECT_NO_THROW(check_constraints(BranchId::T1a, {1.0, 1.0, 3.0, 0.0}));
  EXPECT_THROW(check_constraints(BranchId::T1b, {1.0, 1.0, 3.0, 0.0}), ConstraintError);
  EXPECT_THROW(check_constraints(BranchId::T1c, {1.0, 0.0, 0.0, 0.0}), ConstraintError);
  EXPECT_THROW(check_constraints(BranchId::T1d, {1.0, 1.0, 3.0, 0.0}), ConstraintError);
  EXPECT_THROW(check_constraints(BranchId::T2tan, {-1.0, 1.0, 0.0, 0.0}), ConstraintError);
  EXPECT_THROW(check_constraints(BranchId::T2tanh, {1.0, 1.0, 0.0, 0.0}), ConstraintError);
  EXPECT_THROW(check_constraints(BranchId::T3, {1.0, 0.0, 1.0, 0.0}), ConstraintError);
  try {
    check_constraints(BranchId::T1a, {1.0, 1.0, 1.0, 0.0});
  } catch (const ConstraintError& e) {
    EXPECT_NE(std::string(e.what()).find("r^2 - 4*q > 0"), std::string::npos);
  }
  EXPECT_THROW(aux_exp_neg_phi(BranchId::T1a, {1.0, 1.0, 1.0, 0.0}), ConstraintError);
}

// Central differences of Phi = -ln(E) against the right-hand side of the
// auxiliary ODE, independent of the symbolic differentiator.
TEST(Branches, NumericDerivativeSatisfiesAuxOde) {
  std::mt19937_64 rng(99);
  const double h = 1e-5;
  for (BranchId id : kAll) {
    for (int d = 0; d < 5; ++d) {
      const AuxParams a = draw_aux(id, rng);
      ASSERT_TRUE(satisfies(id, a)) << branch_name(id);
      for (double xi = -2.9; xi < 3.0; xi += 0.23) {
        if (near_pole(id, a, xi, 1e-2) || near_zero(id, a, xi, 1e-2)) continue;
        const double Em = E_at(id, a, xi - h);
        const double E0 = E_at(id, a, xi);
        const double Ep = E_at(id, a, xi + h);
        if (Em * Ep <= 0.0) continue;
        const double dphi = -(std::log(std::abs(Ep)) - std::log(std::abs(Em))) / (2 * h);
        const double rhs = a.p * E0 + a.q / E0 + a.r;
        EXPECT_NEAR(dphi, rhs, 1e-5 * std::max(1.0, std::abs(rhs))) << branch_name(id) << " xi=" << xi;
      }
    }
  }
}

TEST(Branches, ExponentialLimitOfTangentBranch) {
  // T1a with r -> 0 and q < 0 reduces to the coth branch with p = 1.
  const AuxParams a1{1.0, -1.0, std::ldexp(1.0, -40), 0.25};
  const AuxParams a2{1.0, -1.0, 0.0, 0.25};
  for (double xi = -2.0; xi <= 2.0; xi += 0.1) {
    if (near_pole(BranchId::T2coth, a2, xi, 1e-2)) continue;
    EXPECT_NEAR(E_at(BranchId::T1a, a1, xi), E_at(BranchId::T2coth, a2, xi), 1e-8) << xi;
  }
}

TEST(Branches, PoleGuard) {
  const AuxParams a{2.0, 0.0, 0.0, 0.5};
  EXPECT_TRUE(near_pole(BranchId::T3, a, -0.5));
  EXPECT_TRUE(near_pole(BranchId::T3, a, -0.5 + 5e-4));
  EXPECT_FALSE(near_pole(BranchId::T3, a, 0.0));
  const AuxParams t{1.0, 1.0, 0.0, 0.0};
  EXPECT_TRUE(near_pole(BranchId::T2tan, t, std::acos(-1.0) / 2));
  EXPECT_TRUE(near_pole(BranchId::T2tan, t, -std::acos(-1.0) / 2));
  EXPECT_FALSE(near_pole(BranchId::T2tan, t, 0.3));
}

TEST(Draws, QuantizedAndDeterministic) {
  for (BranchId id : kAll) {
    std::mt19937_64 r1(7);
    std::mt19937_64 r2(7);
    for (int i = 0; i < 20; ++i) {
      const AuxParams a = draw_aux(id, r1);
      const AuxParams b = draw_aux(id, r2);
      EXPECT_EQ(a.q, b.q);
      EXPECT_EQ(a.r, b.r);
      EXPECT_TRUE(satisfies(id, a));
      // T1d derives q = r^2/4 from the drawn r.
      const double q = id == BranchId::T1d ? 0.0 : a.q;
      for (double v : {a.p, q, a.r, a.xi0}) EXPECT_EQ(v * 16, std::round(v * 16));
    }
  }
}

TEST(Families, Counts) {
  for (const std::string name : {"burgers", "coupled-burgers", "foam-drainage"}) {
    const auto fams = builtin_families(name);
    ASSERT_EQ(fams.size(), 9u) << name;
    std::set<BranchId> ids;
    for (const auto& f : fams) {
      ids.insert(f.branch);
      EXPECT_FALSE(f.paper_eq.empty());
    }
    EXPECT_EQ(ids.size(), 9u);
  }
  const auto sk = builtin_families("sawada-kotera");
  std::size_t set1 = 0;
  for (const auto& f : sk) set1 += f.set_label == "set1" ? 1 : 0;
  EXPECT_EQ(set1, 8u);
  EXPECT_THROW(builtin_families("kdv"), InvalidArgument);
}

TEST(Families, Lookup) {
  EXPECT_EQ(find_family("burgers", "T2tanh").id, "burgers:T2tanh");
  EXPECT_EQ(find_family("burgers", "burgers:T3").branch, BranchId::T3);
  EXPECT_THROW(find_family("burgers", "T9"), InvalidArgument);
}

TEST(Families, BurgersShockShape) {
  const SolutionFamily f = find_family("burgers", "T2tanh");
  const NumericBindings b{{"A", 1.5}, {"k", 0.75}, {"p", -1.0}, {"q", 0.5}, {"xi0", 0.25}};
  const double s = std::sqrt(0.5);
  for (double xi = -2; xi <= 2; xi += 0.5) {
    EXPECT_NEAR(profile_at(f, 0, b, xi), 1.5 * 0.75 * s * (1 + std::tanh(s * (xi + 0.25))), 1e-12);
  }
}

TEST(Families, CoupledPrefactors) {
  const SolutionFamily f = find_family("coupled-burgers", "T2tanh");
  const double L = 0.5, M = -0.5, p = -1.0, q = 0.25, xi0 = 0.125;
  const NumericBindings b{{"L", L}, {"M", M}, {"B0", 0.25}, {"p", p}, {"q", q}, {"xi0", xi0}};
  const double s = std::sqrt(-p * q);
  for (double xi = -2; xi <= 2; xi += 0.5) {
    const double th = std::tanh(s * (xi + xi0));
    EXPECT_NEAR(profile_at(f, 0, b, xi) - profile_at(f, 0, b, -xi0), -(L - 1) / (L * M - 1) * s * th, 1e-12);
    EXPECT_NEAR(profile_at(f, 1, b, xi) - profile_at(f, 1, b, -xi0), -(M - 1) / (L * M - 1) * s * th, 1e-12);
  }
}

TEST(Families, SawadaKoteraSech) {
  const SolutionFamily f = find_family("sawada-kotera", "sawada-kotera:T2tanh");
  const NumericBindings b{{"k", 1.0}, {"p", -1.0}, {"q", 1.0}, {"xi0", 0.0}};
  for (double xi = -2; xi <= 2; xi += 0.5) {
    const double th = std::tanh(xi);
    EXPECT_NEAR(profile_at(f, 0, b, xi), 6.0 - 6.0 * th * th, 1e-12);
  }
}

TEST(Families, ParameterValidation) {
  const SolutionFamily f = find_family("burgers", "T2tanh");
  EXPECT_THROW(check_family_parameters(f, {{"A", 1}, {"k", 1}, {"p", 1}, {"q", 1}, {"xi0", 0}}), ConstraintError);
  EXPECT_THROW(check_family_parameters(f, {{"A", 0}, {"k", 1}, {"p", -1}, {"q", 1}, {"xi0", 0}}), ConstraintError);
  EXPECT_NO_THROW(check_family_parameters(f, {{"A", 1}, {"k", 1}, {"p", -1}, {"q", 1}, {"xi0", 0}}));
  std::mt19937_64 rng(3);
  for (const auto& fam : builtin_families("coupled-burgers")) {
    EXPECT_NO_THROW(check_family_parameters(fam, draw_parameters(fam, rng))) << fam.id;
  }
}
