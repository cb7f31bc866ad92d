#include "fracwave/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <utility>

#include "fracwave/calculus.hpp"
#include "fracwave/error.hpp"
#include "fracwave/eval.hpp"

namespace fracwave::expansion {

using namespace symexpr;

const char* provenance_name(Provenance p) { return p == Provenance::Derived ? "derived-by-solver" : "printed-in-paper"; }

const char* residual_status_name(ResidualStatus s) {
  switch (s) {
    case ResidualStatus::Zero: return "zero";
    case ResidualStatus::Nonzero: return "nonzero";
    case ResidualStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "verified";
    case Verdict::Refuted: return "refuted";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::map<std::string, Expr> ParamSet::resolved() const {
  std::map<std::string, Expr> out;
  for (const auto& [name, value] : assignments) out.emplace(name, expand_normalize(substitute(value, definitions)));
  return out;
}

// ---------------------------------------------------------------------------
// Balancing

namespace {

struct TermDegree {
  std::int64_t a = 0;  // multiple of N
  std::int64_t b = 0;  // constant offset
  auto operator<=>(const TermDegree&) const = default;
};

bool is_function_symbol(const Expr& e, const std::vector<std::string>& functions) {
  return e.is_symbol() && std::find(functions.begin(), functions.end(), e.name()) != functions.end();
}

std::set<TermDegree> term_degrees(const Expr& ode, const EquationSpec& spec) {
  std::set<TermDegree> out;
  for (const auto& term : terms_of(expand_normalize(ode))) {
    TermDegree d;
    for (const auto& f : factors_of(term)) {
      const Expr& base = f.kind() == Kind::Power ? f.base() : f;
      const std::int64_t s = f.kind() == Kind::Power ? f.exponent() : 1;
      if (is_function_symbol(base, spec.functions)) {
        d.a += s;
      } else if (base.kind() == Kind::Derivative && is_function_symbol(base.operand(), spec.functions)) {
        d.a += s;
        d.b += s * base.order();
      } else if (contains(base, [&](const Expr& n) {
                   return is_function_symbol(n, spec.functions) || n.kind() == Kind::Derivative;
                 })) {
        throw InvalidArgument("term '" + term.str() + "' is not a product of powers of the unknowns");
      }
    }
    if (d.a < 0) throw InvalidArgument("negative power of the unknown in '" + term.str() + "'");
    out.insert(d);
  }
  return out;
}

int balance_one(const std::set<TermDegree>& degrees) {
  std::set<std::int64_t> valid;
  for (const auto& x : degrees) {
    for (const auto& y : degrees) {
      if (x.a <= y.a) continue;
      const std::int64_t num = y.b - x.b;
      const std::int64_t den = x.a - y.a;
      if (num % den != 0 || num / den < 1) continue;
      const std::int64_t n = num / den;
      std::int64_t top = std::numeric_limits<std::int64_t>::min();
      for (const auto& z : degrees) top = std::max(top, z.a * n + z.b);
      std::set<std::int64_t> attaining;
      for (const auto& z : degrees) {
        if (z.a * n + z.b == top) attaining.insert(z.a);
      }
      if (attaining.size() >= 2) valid.insert(n);
    }
  }
  if (valid.empty()) throw InvalidArgument("no positive integer balance exists");
  if (valid.size() > 1) throw InvalidArgument("ambiguous balance: several inconsistent values of N");
  return static_cast<int>(*valid.begin());
}

}  // namespace

int balance_degree(const EquationSpec& spec) {
  if (spec.odes.empty()) throw InvalidArgument("equation has no ODE");
  std::optional<int> n;
  for (const auto& ode : spec.odes) {
    const int m = balance_one(term_degrees(ode, spec));
    if (n && *n != m) throw InvalidArgument("ambiguous balance: the ODEs of the system disagree");
    n = m;
  }
  return *n;
}

// ---------------------------------------------------------------------------
// Ansatz and derivation rule

Ansatz build_ansatz(int N, const std::string& function, const std::string& prefix, const AuxSymbols& aux) {
  if (N < 1) throw InvalidArgument("ansatz order must be at least 1");
  Ansatz a;
  a.N = N;
  a.function = function;
  std::vector<Expr> terms;
  for (int i = 0; i <= N; ++i) {
    a.coefficients.push_back(prefix + std::to_string(i));
    terms.push_back(sym(a.coefficients.back()) * pow(sym(aux.kernel), i));
  }
  a.expr = make_sum(std::move(terms));
  return a;
}

KernelPoly to_kernel_poly(const Expr& e, const AuxSymbols& aux) { return collect_powers(e, aux.kernel); }

Expr from_kernel_poly(const KernelPoly& poly, const AuxSymbols& aux) { return from_powers(poly, aux.kernel); }

KernelPoly derive_kernel(const KernelPoly& poly, const AuxSymbols& aux) {
  std::map<int, std::vector<Expr>> parts;
  const Expr p = sym(aux.p);
  const Expr q = sym(aux.q);
  const Expr r = sym(aux.r);
  for (const auto& [d, a] : poly) {
    if (d == 0) continue;
    if (contains_symbol(a, aux.kernel)) throw InvalidArgument("coefficient depends on the kernel");
    const Expr f = Expr(-d) * a;
    parts[d + 1].push_back(f * p);
    parts[d].push_back(f * r);
    parts[d - 1].push_back(f * q);
  }
  KernelPoly out;
  for (auto& [d, terms] : parts) {
    Expr c = expand_normalize(make_sum(std::move(terms)));
    if (!c.is_zero()) out.emplace(d, std::move(c));
  }
  return out;
}

std::vector<KernelPoly> reduce_to_polynomial(const EquationSpec& spec, const std::vector<Ansatz>& ansatz,
                                             const AuxSymbols& aux) {
  SymbolBindings fields;
  for (const auto& a : ansatz) fields[a.function] = a.expr;
  for (const auto& f : spec.functions) {
    if (!fields.count(f)) throw InvalidArgument("no ansatz for unknown function '" + f + "'");
  }

  std::function<Expr(const Expr&)> reduce = [&](const Expr& e) -> Expr {
    return rewrite(e, [&](const Expr& n) -> std::optional<Expr> {
      if (n.is_symbol()) {
        auto it = fields.find(n.name());
        if (it != fields.end()) return it->second;
        return std::nullopt;
      }
      if (n.kind() != Kind::Derivative) return std::nullopt;
      if (n.variable() != spec.variable) {
        throw InvalidArgument("derivative in '" + n.variable() + "' is not in the wave variable");
      }
      const bool mentions_unknown = contains(n.operand(), [&](const Expr& m) {
        return is_function_symbol(m, spec.functions);
      });
      if (!mentions_unknown) throw InvalidArgument("derivative of something other than the unknown: " + n.str());
      KernelPoly poly = to_kernel_poly(reduce(n.operand()), aux);
      for (int i = 0; i < n.order(); ++i) poly = derive_kernel(poly, aux);
      return from_kernel_poly(poly, aux);
    });
  };

  std::vector<KernelPoly> out;
  for (const auto& ode : spec.odes) out.push_back(to_kernel_poly(reduce(ode), aux));
  return out;
}

AlgebraicSystem extract_system(const std::vector<KernelPoly>& polys, const std::vector<std::string>& unknowns,
                               const std::vector<std::string>& function_labels) {
  AlgebraicSystem sys;
  sys.unknowns = unknowns;
  std::set<std::string> symbols;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (const auto& [d, c] : polys[i]) {
      if (c.is_zero()) continue;
      std::string label = "E^" + std::to_string(d);
      if (polys.size() > 1 && i < function_labels.size()) label = function_labels[i] + ":" + label;
      sys.labels.push_back(std::move(label));
      sys.equations.push_back(c);
      for (const auto& s : free_symbols(c)) symbols.insert(s);
    }
  }
  for (const auto& s : symbols) {
    if (std::find(unknowns.begin(), unknowns.end(), s) == unknowns.end()) sys.free_parameters.push_back(s);
  }
  return sys;
}

AlgebraicSystem derive_system(const EquationSpec& spec, const AuxSymbols& aux) {
  const int N = balance_degree(spec);
  std::vector<Ansatz> ansatz;
  for (std::size_t i = 0; i < spec.functions.size(); ++i) {
    ansatz.push_back(build_ansatz(N, spec.functions[i], spec.ansatz_prefixes.at(i), aux));
  }
  AlgebraicSystem sys = extract_system(reduce_to_polynomial(spec, ansatz, aux), spec.solve_unknowns, spec.functions);
  sys.ansatz_order = N;
  for (const auto& a : ansatz) sys.leading_coefficients.push_back(a.coefficients.back());
  return sys;
}

// ---------------------------------------------------------------------------
// Shared algebra helpers

namespace {

bool has_radical(const Expr& e) {
  return contains(e, [](const Expr& n) { return n.kind() == Kind::Function && n.func() == Func::Sqrt; });
}

/// Numerator of `e` over a common denominator with radical squares removed.
Expr reduced_numerator(const Expr& e) {
  Expr cur = e;
  for (int i = 0; i < 6; ++i) {
    Expr next = eliminate_radical_squares(together(cur).numerator);
    if (next == cur) return next;
    cur = std::move(next);
  }
  return cur;
}

/// Minimal exponent of each listed symbol across all terms of an expanded sum.
std::map<std::string, std::int64_t> monomial_content(const Expr& e, const std::set<std::string>& allowed) {
  std::map<std::string, std::int64_t> content;
  bool first = true;
  for (const auto& t : terms_of(e)) {
    std::map<std::string, std::int64_t> here;
    for (const auto& f : factors_of(t)) {
      if (f.is_symbol() && allowed.count(f.name())) here[f.name()] += 1;
      if (f.kind() == Kind::Power && f.base().is_symbol() && f.exponent() > 0 && allowed.count(f.base().name())) {
        here[f.base().name()] += f.exponent();
      }
    }
    if (first) {
      content = here;
      first = false;
    } else {
      for (auto it = content.begin(); it != content.end();) {
        auto h = here.find(it->first);
        if (h == here.end()) {
          it = content.erase(it);
        } else {
          it->second = std::min(it->second, h->second);
          ++it;
        }
      }
    }
  }
  return content;
}

Expr divide_monomial(const Expr& e, const std::map<std::string, std::int64_t>& content) {
  std::vector<Expr> factors{e};
  for (const auto& [name, m] : content) factors.push_back(pow(sym(name), -m));
  return expand_normalize(make_product(std::move(factors)));
}

/// Greatest rational dividing every coefficient of an expanded sum.
Rational rational_content(const Expr& e) {
  Rational::Integer g = 0;
  Rational::Integer l = 1;
  for (const auto& t : terms_of(e)) {
    const Rational c = split_coefficient(t).first;
    g = boost::multiprecision::gcd(g, boost::multiprecision::abs(c.numerator()));
    l = boost::multiprecision::lcm(l, c.denominator());
  }
  if (g == 0) return Rational(1);
  return Rational(g, l);
}

/// sqrt(d) written as outside * sqrt(inside), pulling out even monomial
/// powers and rational square factors.
Expr radical(const Expr& d) {
  std::set<std::string> all = free_symbols(d);
  auto content = monomial_content(d, all);
  std::map<std::string, std::int64_t> even;
  std::vector<Expr> outside;
  for (const auto& [name, m] : content) {
    if (m >= 2) {
      even[name] = m - m % 2;
      outside.push_back(pow(sym(name), m / 2));
    }
  }
  Expr inside = divide_monomial(d, even);
  const Rational rc = rational_content(inside);
  const Rational s = rc.square_content();
  if (!s.is_one()) {
    inside = expand_normalize(inside * Expr(Rational(1) / (s * s)));
    outside.push_back(Expr(s));
  }
  outside.push_back(apply(Func::Sqrt, inside));
  return make_product(std::move(outside));
}

Expr positive_leading(const Expr& e) {
  const auto ts = terms_of(e);
  if (e.kind() == Kind::Sum && split_coefficient(ts.back()).first.is_negative()) return expand_normalize(-e);
  return e;
}

/// Splits a side-condition expression into its non-numeric factors, pulling
/// monomial and rational content out of sums.
void add_condition(std::vector<Expr>& out, const Expr& e) {
  auto push = [&](const Expr& g) {
    if (g.is_number()) return;
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  };
  for (const auto& f : factors_of(e)) {
    const Expr base = f.kind() == Kind::Power ? f.base() : f;
    if (base.kind() != Kind::Sum) {
      push(base);
      continue;
    }
    Expr ex = expand_normalize(base);
    if (ex.kind() != Kind::Sum) {
      add_condition(out, ex);
      continue;
    }
    const auto content = monomial_content(ex, free_symbols(ex));
    for (const auto& [name, m] : content) push(sym(name));
    ex = divide_monomial(ex, content);
    ex = expand_normalize(ex * Expr(Rational(1) / rational_content(ex)));
    push(positive_leading(ex));
  }
}

void sort_conditions(std::vector<Expr>& conds) {
  std::sort(conds.begin(), conds.end(), [](const Expr& a, const Expr& b) {
    const std::string sa = a.str();
    const std::string sb = b.str();
    return sa.size() != sb.size() ? sa.size() < sb.size() : sa < sb;
  });
}

/// Single-fraction form num * den^-1 with radical squares removed.
Expr tidy(const Expr& e) {
  const Fraction f = cancel(eliminate_radical_squares(e));
  const Expr num = eliminate_radical_squares(f.numerator);
  if (f.denominator.is_one()) return num;
  return make_product({num, pow(f.denominator, -1)});
}

// ---------------------------------------------------------------------------
// Triangular solver

struct Branch {
  std::vector<Expr> equations;
  std::map<std::string, Expr> solved;
  std::string signs;
};

struct Pivot {
  std::size_t equation = 0;
  std::string unknown;
  int degree = 0;
  std::map<int, Expr> coeffs;
  int rank = 0;  // smaller is preferred
};

class Solver {
 public:
  Solver(const AlgebraicSystem& sys, const SolverOptions& opt) : sys_(sys), opt_(opt) {
    unknowns_.insert(sys.unknowns.begin(), sys.unknowns.end());
    divisible_.insert(sys.free_parameters.begin(), sys.free_parameters.end());
    divisible_.insert(sys.leading_coefficients.begin(), sys.leading_coefficients.end());
  }

  SolveOutcome run() {
    SolveOutcome out;
    if (sys_.ansatz_order > opt_.max_ansatz_order) {
      out.verification_only = true;
      out.note = "ansatz order " + std::to_string(sys_.ansatz_order) + " exceeds the triangular heuristic's scope";
      return out;
    }
    std::vector<Branch> pending{Branch{sys_.equations, {}, ""}};
    std::vector<Branch> finished;
    std::vector<std::string> notes;
    int branches = 1;
    while (!pending.empty()) {
      Branch b = std::move(pending.back());
      pending.pop_back();
      const Step step = advance(b);
      if (step.kind == StepKind::Done) {
        finished.push_back(std::move(b));
      } else if (step.kind == StepKind::Inconsistent) {
        notes.push_back("branch '" + b.signs + "' is inconsistent");
      } else if (step.kind == StepKind::Stall) {
        notes.push_back("no pivot found in branch '" + b.signs + "'");
      } else {
        branches += static_cast<int>(step.children.size()) - 1;
        if (branches > opt_.max_branches) throw InvalidArgument("solver branch limit exceeded");
        for (auto it = step.children.rbegin(); it != step.children.rend(); ++it) pending.push_back(std::move(*it));
      }
    }
    std::sort(finished.begin(), finished.end(), [](const Branch& a, const Branch& b) { return a.signs < b.signs; });
    for (auto& b : finished) {
      ParamSet ps = emit(b);
      const VerificationReport rep = verify_param_set(sys_, ps);
      if (rep.verdict == Verdict::Verified) {
        out.param_sets.push_back(std::move(ps));
      } else {
        notes.push_back("discarded unverified branch '" + b.signs + "'");
      }
    }
    out.verification_only = out.param_sets.empty();
    for (const auto& n : notes) out.note += (out.note.empty() ? "" : "; ") + n;
    if (out.verification_only && out.note.empty()) out.note = "no solution found";
    return out;
  }

 private:
  enum class StepKind { Done, Inconsistent, Stall, Split };
  struct Step {
    StepKind kind;
    std::vector<Branch> children;
  };

  bool mentions_unknown(const Expr& e) const {
    return contains(e, [&](const Expr& n) { return n.is_symbol() && unknowns_.count(n.name()); });
  }

  std::set<std::string> unknowns_in(const Expr& e) const {
    std::set<std::string> out;
    for (const auto& s : free_symbols(e)) {
      if (unknowns_.count(s)) out.insert(s);
    }
    return out;
  }

  Expr normalize_equation(const Expr& e) const {
    Expr n = reduced_numerator(e);
    if (n.is_zero()) return n;
    n = divide_monomial(n, monomial_content(n, divisible_));
    const Rational rc = rational_content(n);
    if (!rc.is_one()) n = expand_normalize(n * Expr(Rational(1) / rc));
    return n;
  }

  int unknown_index(const std::string& u) const {
    auto it = std::find(sys_.unknowns.begin(), sys_.unknowns.end(), u);
    return static_cast<int>(it - sys_.unknowns.begin());
  }

  std::optional<Pivot> choose_pivot(const std::vector<Expr>& eqs) const {
    std::optional<Pivot> best;
    auto consider = [&](Pivot p) {
      if (!best || p.rank < best->rank) best = std::move(p);
    };
    const int nu = static_cast<int>(sys_.unknowns.size());
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      const auto present = unknowns_in(eqs[i]);
      for (const auto& u : present) {
        const auto deg = polynomial_degree(eqs[i], u);
        if (!deg || *deg < 1 || *deg > 2) continue;
        std::map<int, Expr> coeffs;
        try {
          coeffs = collect_powers(eqs[i], u);
        } catch (const InvalidArgument&) {
          continue;
        }
        const int later = nu - unknown_index(u);
        if (present.size() == 1) {
          const bool numeric = coeffs.count(*deg) && coeffs.at(*deg).is_number();
          const int rank = ((*deg - 1) * 2 + (numeric ? 0 : 1)) * 10000 + later * 100 + static_cast<int>(i);
          consider(Pivot{i, u, *deg, coeffs, rank});
        } else if (*deg == 1 && !mentions_unknown(coeffs.at(1))) {
          const bool numeric = coeffs.at(1).is_number();
          const int rank = (10 + (numeric ? 0 : 1)) * 10000 + later * 100 + static_cast<int>(i);
          consider(Pivot{i, u, 1, coeffs, rank});
        }
      }
    }
    return best;
  }

  static Expr coeff(const std::map<int, Expr>& c, int d) {
    auto it = c.find(d);
    return it == c.end() ? Expr(0) : it->second;
  }

  Branch assign(const Branch& b, const std::string& u, const Expr& value, const std::string& sign) const {
    Branch out;
    out.signs = b.signs + sign;
    const SymbolBindings bind{{u, value}};
    for (const auto& [name, v] : b.solved) out.solved.emplace(name, tidy(substitute(v, bind)));
    out.solved.emplace(u, tidy(value));
    for (const auto& e : b.equations) out.equations.push_back(substitute(e, bind));
    return out;
  }

  Step advance(Branch& b) const {
    for (;;) {
      std::vector<Expr> eqs;
      for (const auto& e : b.equations) {
        Expr n = normalize_equation(e);
        if (n.is_zero()) continue;
        if (!mentions_unknown(n)) return {StepKind::Inconsistent, {}};
        if (std::find(eqs.begin(), eqs.end(), n) == eqs.end()) eqs.push_back(std::move(n));
      }
      b.equations = eqs;
      if (eqs.empty()) {
        for (const auto& u : sys_.unknowns) {
          if (!b.solved.count(u)) return {StepKind::Stall, {}};
        }
        return {StepKind::Done, {}};
      }
      const auto pivot = choose_pivot(eqs);
      if (!pivot) return {StepKind::Stall, {}};

      if (pivot->degree == 1) {
        const Expr a = coeff(pivot->coeffs, 1);
        const Expr c0 = coeff(pivot->coeffs, 0);
        b = assign(b, pivot->unknown, -c0 / a, "");
        continue;
      }

      Expr a = coeff(pivot->coeffs, 2);
      Expr bb = coeff(pivot->coeffs, 1);
      Expr c0 = coeff(pivot->coeffs, 0);
      if (a.is_number() && a.value().is_negative()) {
        a = -a;
        bb = expand_normalize(-bb);
        c0 = expand_normalize(-c0);
      }
      std::vector<Branch> kids;
      if (c0.is_zero()) {
        kids.push_back(assign(b, pivot->unknown, Expr(0), "0"));
        kids.push_back(assign(b, pivot->unknown, -bb / a, "1"));
        return {StepKind::Split, std::move(kids)};
      }
      const Expr disc = reduced_numerator(bb * bb - Expr(4) * a * c0);
      if (disc.is_zero()) {
        b = assign(b, pivot->unknown, -bb / (Expr(2) * a), "");
        continue;
      }
      const Expr root = radical(disc);
      kids.push_back(assign(b, pivot->unknown, (-bb + root) / (Expr(2) * a), "+"));
      kids.push_back(assign(b, pivot->unknown, (-bb - root) / (Expr(2) * a), "-"));
      return {StepKind::Split, std::move(kids)};
    }
  }

  ParamSet emit(const Branch& b) const {
    ParamSet ps;
    ps.label = b.signs.empty() ? "derived" : "derived" + b.signs;
    ps.provenance = Provenance::Derived;
    std::map<std::string, Expr> values = b.solved;
    for (int pass = 0; pass < 8; ++pass) {
      bool changed = false;
      for (auto& [name, v] : values) {
        if (!mentions_unknown(v)) continue;
        SymbolBindings bind;
        for (const auto& [n2, v2] : values) {
          if (n2 != name) bind.emplace(n2, v2);
        }
        v = tidy(substitute(v, bind));
        changed = true;
      }
      if (!changed) break;
    }
    for (const auto& [name, v] : values) {
      if (mentions_unknown(v)) throw InvalidArgument("back-substitution left unknowns in " + name);
    }
    ps.assignments = values;
    std::vector<Expr> conds;
    for (const auto& lead : sys_.leading_coefficients) {
      auto it = values.find(lead);
      add_condition(conds, it == values.end() ? sym(lead) : it->second);
    }
    for (const auto& [name, v] : values) {
      for (const auto& f : factors_of(v)) {
        if (f.kind() == Kind::Power && f.exponent() < 0) add_condition(conds, f.base());
      }
    }
    sort_conditions(conds);
    ps.side_conditions = std::move(conds);
    return ps;
  }

  const AlgebraicSystem& sys_;
  SolverOptions opt_;
  std::set<std::string> unknowns_;
  std::set<std::string> divisible_;
};

/// Deterministic numeric probe of a residual containing radicals.
/// Returns true when the residual is clearly non-zero at some sample.
std::optional<bool> probe_nonzero(const Expr& residual) {
  const auto symbols = free_symbols(residual);
  std::mt19937_64 rng(0x5eed1234ULL);
  std::uniform_real_distribution<double> mag(0.3, 1.7);
  int evaluated = 0;
  for (int trial = 0; trial < 8; ++trial) {
    NumericBindings b;
    for (const auto& s : symbols) {
      const double v = mag(rng);
      b[s] = (rng() & 1U) ? v : -v;
    }
    try {
      const Complex value = eval_complex(residual, b);
      double scale = 0.0;
      for (const auto& t : terms_of(residual)) scale += std::abs(eval_complex(t, b));
      ++evaluated;
      if (std::abs(value) > 1e-9 * std::max(scale, 1e-300)) return true;
    } catch (const DomainError&) {
    }
  }
  if (evaluated == 0) return std::nullopt;
  return false;
}

}  // namespace

SolveOutcome solve_triangular(const AlgebraicSystem& sys, const SolverOptions& options) {
  return Solver(sys, options).run();
}

VerificationReport verify_param_set(const AlgebraicSystem& sys, const ParamSet& ps) {
  const auto values = ps.resolved();
  for (const auto& u : sys.unknowns) {
    if (!values.count(u)) throw InvalidArgument("parameter set does not assign unknown '" + u + "'");
  }
  SymbolBindings bind(values.begin(), values.end());
  VerificationReport rep;
  bool any_nonzero = false;
  bool any_inconclusive = false;
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    EquationCheck chk;
    chk.label = i < sys.labels.size() ? sys.labels[i] : std::to_string(i);
    chk.residual = reduced_numerator(substitute(sys.equations[i], bind));
    if (chk.residual.is_zero()) {
      chk.status = ResidualStatus::Zero;
    } else if (!has_radical(chk.residual)) {
      chk.status = ResidualStatus::Nonzero;
    } else {
      const auto probe = probe_nonzero(chk.residual);
      chk.status = probe.value_or(false) ? ResidualStatus::Nonzero : ResidualStatus::Inconclusive;
    }
    any_nonzero = any_nonzero || chk.status == ResidualStatus::Nonzero;
    any_inconclusive = any_inconclusive || chk.status == ResidualStatus::Inconclusive;
    rep.checks.push_back(std::move(chk));
  }
  rep.verdict = any_nonzero ? Verdict::Refuted : (any_inconclusive ? Verdict::Inconclusive : Verdict::Verified);
  return rep;
}

std::vector<SystemMatch> compare_systems(const AlgebraicSystem& derived, const std::vector<Expr>& printed) {
  std::vector<SystemMatch> out;
  for (std::size_t i = 0; i < printed.size(); ++i) {
    SystemMatch m;
    m.printed_index = i;
    std::size_t best_terms = std::numeric_limits<std::size_t>::max();
    for (std::size_t j = 0; j < derived.equations.size(); ++j) {
      for (int sign : {1, -1}) {
        const Expr diff = expand_normalize(printed[i] - Expr(sign) * derived.equations[j]);
        if (diff.is_zero()) {
          m.derived_index = j;
          m.sign = sign;
          m.difference = diff;
          best_terms = 0;
          break;
        }
        const std::size_t n = terms_of(diff).size();
        if (n < best_terms) {
          best_terms = n;
          m.sign = sign;
          m.difference = diff;
        }
      }
      if (m.derived_index) break;
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace fracwave::expansion
