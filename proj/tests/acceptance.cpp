// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "fracwave/calculus.hpp"
#include "fracwave/fracderiv.hpp"
#include "fracwave/parse.hpp"
#include "fracwave/registry.hpp"

using namespace fracwave;
using expansion::Verdict;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int number;
  double budget_seconds;
  std::function<Outcome()> check;
};

bool equivalent(const symexpr::Expr& a, const symexpr::Expr& b) {
  return symexpr::expand_normalize(symexpr::eliminate_radical_squares(a - b)).is_zero();
}

Outcome balance() {
  const std::map<std::string, int> expected{
      {"burgers", 1}, {"coupled-burgers", 1}, {"foam-drainage", 1}, {"sawada-kotera", 2}};
  Outcome o;
  for (const auto& [name, n] : expected) {
    const int got = expansion::balance_degree(registry::equation(name));
    o.pass = o.pass && got == n;
    o.detail += name + " N=" + std::to_string(got) + " ";
  }
  return o;
}

Outcome systems() {
  Outcome o;
  const auto burgers = expansion::derive_system(registry::equation("burgers"));
  const std::vector<std::string> printed15{"c*A0 - A*k^2*A1*q + k*A0^2", "c*A1 + 2*k*A0*A1 - A*k^2*A1*r",
                                           "k*A1^2 - A*k^2*A1*p"};
  o.pass = burgers.equations.size() == 3;
  for (std::size_t i = 0; o.pass && i < 3; ++i) o.pass = equivalent(burgers.equations[i], symexpr::parse(printed15[i]));
  o.detail = std::string("burgers 3/3 ") + (o.pass ? "exact" : "mismatch");

  const auto coupled = expansion::derive_system(registry::equation("coupled-burgers"));
  const auto printed = registry::printed_system("coupled-burgers");
  std::size_t matched = 0;
  std::string mismatches;
  for (const auto& m : expansion::compare_systems(coupled, printed.equations)) {
    if (m.derived_index && m.difference.is_zero()) {
      ++matched;
    } else {
      mismatches += " [" + std::to_string(m.printed_index) + ": " + symexpr::format(m.difference) + "]";
    }
  }
  o.pass = o.pass && coupled.equations.size() == 8 && matched == printed.equations.size();
  o.detail += "; coupled " + std::to_string(matched) + "/" + std::to_string(printed.equations.size()) +
              " printed equations matched" + (mismatches.empty() ? "" : ", mismatches:" + mismatches);
  return o;
}

Outcome solver() {
  Outcome o;
  for (const std::string name : {"burgers", "coupled-burgers", "foam-drainage"}) {
    const auto sys = expansion::derive_system(registry::equation(name));
    const auto solved = expansion::solve_triangular(sys);
    std::size_t ok = 0;
    for (const auto& ps : solved.param_sets) ok += expansion::verify_param_set(sys, ps).verdict == Verdict::Verified;
    o.pass = o.pass && !solved.param_sets.empty() && ok == solved.param_sets.size();
    o.detail += name + " " + std::to_string(ok) + "/" + std::to_string(solved.param_sets.size()) + " zero; ";
  }
  const auto foam = expansion::solve_triangular(expansion::derive_system(registry::equation("foam-drainage")));
  bool same = foam.param_sets.size() == 1;
  if (same) {
    const auto& a = foam.param_sets.front().assignments;
    same = a.size() == 3 && equivalent(a.at("A0"), symexpr::parse("k*r/2")) &&
           equivalent(a.at("A1"), symexpr::parse("k*p")) &&
           equivalent(a.at("c"), symexpr::parse("-k^3*p*q + k^3*r^2/4"));
  }
  o.pass = o.pass && same;
  o.detail += std::string("foam set ") + (same ? "equals" : "differs from") + " the printed (45)";
  return o;
}

Outcome printed_sets() {
  Outcome o;
  std::set<std::string> seen;
  for (const auto& name : registry::equation_names()) {
    const auto sys = expansion::derive_system(registry::equation(name));
    for (const auto& p : registry::printed_param_sets(name)) {
      const auto first = expansion::verify_param_set(sys, p.set);
      const auto again = expansion::verify_param_set(sys, p.set);
      seen.insert(p.paper_eq);
      bool deterministic = first.verdict == again.verdict && first.checks.size() == again.checks.size();
      std::size_t nonzero = 0;
      bool attached = true;
      for (std::size_t i = 0; deterministic && i < first.checks.size(); ++i) {
        deterministic = first.checks[i].residual == again.checks[i].residual;
        if (first.checks[i].status != expansion::ResidualStatus::Zero) {
          ++nonzero;
          attached = attached && !first.checks[i].residual.is_zero();
        }
      }
      if (first.verdict == Verdict::Refuted) attached = attached && nonzero > 0;
      o.pass = o.pass && deterministic && attached;
      o.detail += p.paper_eq + " " + p.set.label + "=" + expansion::verdict_name(first.verdict);
      if (nonzero > 0) o.detail += "(" + std::to_string(nonzero) + " residuals)";
      o.detail += " ";
      if (p.paper_eq == "(16)" && first.verdict != Verdict::Refuted) o.detail += "[(16) speed not flagged] ";
    }
  }
  for (const char* eq : {"(16)", "(31)", "(45)", "(60)", "(61)"}) {
    if (!seen.count(eq)) {
      o.pass = false;
      o.detail += std::string("missing ") + eq + " ";
    }
  }
  return o;
}

Outcome aux_branches() {
  Outcome o;
  std::mt19937_64 rng(verify::AuditOptions{}.seed);
  const auto samples = verify::sample_points(-3.0, 3.0, 100);
  double worst = 0.0;
  std::size_t runs = 0;
  for (const auto& b : catalog::branches()) {
    for (int d = 0; d < 5; ++d) {
      const auto r = verify::aux_ode_residual(b.id, catalog::draw_aux(b.id, rng), samples);
      worst = std::max(worst, r.max_residual);
      o.pass = o.pass && r.verdict == verify::Outcome::Pass && r.max_residual < 1e-9;
      ++runs;
    }
  }
  std::ostringstream s;
  s << runs << " branch draws x 100 samples, max |residual| " << worst;
  o.detail = s.str();
  return o;
}

Outcome family_residuals(const std::vector<verify::ResidualReport>& audit) {
  Outcome o;
  std::size_t total = 0;
  std::size_t sk_set1 = 0;
  double worst = 0.0;
  std::size_t min_samples = SIZE_MAX;
  for (const auto& r : audit) {
    if (r.kind != "composed") continue;
    ++total;
    worst = std::max(worst, r.scaled);
    min_samples = std::min(min_samples, r.samples);
    o.pass = o.pass && r.verdict == verify::Outcome::Pass && r.scaled < 1e-6 && r.samples >= 50;
    if (r.subject.rfind("sawada-kotera:T", 0) == 0) ++sk_set1;
    if (r.verdict != verify::Outcome::Pass) o.detail += "[" + r.subject + " fails] ";
  }
  o.pass = o.pass && sk_set1 == 8 && total >= 36;
  std::ostringstream s;
  s << total << " composed families (" << sk_set1 << " SK set 1), max scaled " << worst << ", min samples "
    << min_samples;
  o.detail += s.str();
  return o;
}

Outcome fractional() {
  Outcome o;
  double worst = 0.0;
  for (double a : {0.25, 0.5, 0.75}) {
    for (double g : {1.0, 2.0, 3.0}) {
      for (double z : {0.5, 1.0, 2.0}) {
        const double exact = fracderiv::mrl_power_rule(a, g, z);
        const double quad = fracderiv::mrl_quadrature([g](double s) { return std::pow(s, g); }, a, z);
        worst = std::max(worst, std::abs(quad - exact) / std::abs(exact));
      }
    }
  }
  const double half = fracderiv::mrl_quadrature([](double s) { return s; }, 0.5, 1.0);
  const double target = 2.0 / std::sqrt(std::numbers::pi);
  o.pass = worst < 1e-4 && std::abs(half - target) < 1e-4;
  std::ostringstream s;
  s.precision(17);
  s << "27 points, max relative error " << worst << "; D^0.5 z at 1 = " << half;
  o.detail = s.str();
  return o;
}

Outcome classical() {
  const auto f = catalog::find_family("burgers", "T2tanh");
  const auto r = verify::classical_pde_residual(f, {{"A", 1}, {"k", 1}, {"p", -1}, {"q", 1}, {"xi0", 0}}, verify::Grid{});
  Outcome o;
  const double order = r.convergence_ratio ? std::log2(*r.convergence_ratio) : 0.0;
  o.pass = order >= 1.8;
  std::ostringstream s;
  s << "burgers T2tanh h=0.05 -> 0.025 residual ratio " << r.convergence_ratio.value_or(0.0) << ", order " << order;
  o.detail = s.str();
  return o;
}

Outcome equivalences(const std::vector<verify::ResidualReport>& audit) {
  Outcome o;
  std::map<std::string, std::size_t> per_equation;
  std::size_t computed = 0;
  for (const auto& r : audit) {
    if (r.kind != "equivalence" || r.subject.find(" ~ ") == std::string::npos) continue;
    const std::string eq = r.subject.substr(0, r.subject.find(':'));
    ++per_equation[eq];
    const bool numeric = r.samples > 0 && std::isfinite(r.scaled);
    computed += numeric;
    o.pass = o.pass && numeric;
    if (r.verdict == verify::Outcome::Fail) o.detail += "[erratum: " + r.subject + "] ";
  }
  o.pass = o.pass && per_equation["burgers"] >= 2 && per_equation["foam-drainage"] >= 2;
  o.detail += std::to_string(computed) + " named entries computed (burgers " +
              std::to_string(per_equation["burgers"]) + ", foam-drainage " +
              std::to_string(per_equation["foam-drainage"]) + ")";
  return o;
}

Outcome determinism(const std::vector<verify::ResidualReport>& audit) {
  const auto& names = registry::equation_names();
  const std::uint64_t seed = verify::AuditOptions{}.seed;
  const std::string a = cli::audit_json(audit, names, seed).dump(2);
  const std::string b = cli::audit_json(verify::family_audit(names), names, seed).dump(2);
  bool derive_same = true;
  for (const auto& n : names) derive_same = derive_same && cli::derive_json(n).dump(2) == cli::derive_json(n).dump(2);
  Outcome o;
  o.pass = a == b && derive_same;
  o.detail = "audit JSON " + std::to_string(a.size()) + " bytes " + (a == b ? "identical" : "differs") +
             "; derive reports " + (derive_same ? "identical" : "differ");
  return o;
}

}  // namespace

int main() {
  std::vector<verify::ResidualReport> audit;
  const std::vector<Criterion> criteria{
      {1, 1.0, balance},
      {2, 5.0, systems},
      {3, 10.0, solver},
      {4, 30.0, printed_sets},
      {5, 10.0, aux_branches},
      {6, 60.0,
       [&] {
         audit = verify::family_audit(registry::equation_names());
         return family_residuals(audit);
       }},
      {7, 10.0, fractional},
      {8, 30.0, classical},
      {9, 10.0, [&] { return equivalences(audit); }},
      {10, 120.0, [&] { return determinism(audit); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_seconds) {
      o.pass = false;
      o.detail += " [over the " + std::to_string(c.budget_seconds) + " s budget]";
    }
    failures += o.pass ? 0 : 1;
    std::printf("criterion %2d: %s  %s (%.2f s)\n", c.number, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
