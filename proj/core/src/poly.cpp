#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "fracwave/calculus.hpp"

namespace fracwave::symexpr {

namespace {

using Monomial = std::vector<int>;

/// Sparse multivariate polynomial over the rationals in a fixed list of
/// atoms. Monomials compare lexicographically, atom 0 most significant.
struct Poly {
  std::map<Monomial, Rational, std::greater<>> terms;
  std::size_t nvars = 0;

  bool zero() const { return terms.empty(); }
  bool constant() const { return terms.empty() || (terms.size() == 1 && is_unit_monomial(terms.begin()->first)); }
  static bool is_unit_monomial(const Monomial& m) {
    return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
};

Poly constant_poly(const Rational& c, std::size_t n) {
  Poly p;
  p.nvars = n;
  p.add_term(Monomial(n, 0), c);
  return p;
}

Poly add(const Poly& a, const Poly& b, const Rational& scale = Rational(1)) {
  Poly r = a;
  for (const auto& [m, c] : b.terms) r.add_term(m, c * scale);
  return r;
}

Poly mul(const Poly& a, const Poly& b) {
  Poly r;
  r.nvars = a.nvars;
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      Monomial m(a.nvars);
      for (std::size_t i = 0; i < a.nvars; ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

Poly scale(const Poly& a, const Rational& s) {
  Poly r;
  r.nvars = a.nvars;
  for (const auto& [m, c] : a.terms) r.add_term(m, c * s);
  return r;
}

int degree(const Poly& a, std::size_t x) {
  int d = -1;
  for (const auto& [m, c] : a.terms) d = std::max(d, m[x]);
  return d;
}

/// Coefficient of x^d, as a polynomial without x.
Poly coeff(const Poly& a, std::size_t x, int d) {
  Poly r;
  r.nvars = a.nvars;
  for (const auto& [m, c] : a.terms) {
    if (m[x] != d) continue;
    Monomial mm = m;
    mm[x] = 0;
    r.add_term(mm, c);
  }
  return r;
}

Poly monomial_poly(std::size_t n, std::size_t x, int d) {
  Poly p;
  p.nvars = n;
  Monomial m(n, 0);
  m[x] = d;
  p.add_term(m, Rational(1));
  return p;
}

/// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<Poly> exact_div(const Poly& a, const Poly& b) {
  Poly q;
  q.nvars = a.nvars;
  Poly r = a;
  const auto& [lm, lc] = *b.terms.begin();
  while (!r.zero()) {
    const auto& [rm, rc] = *r.terms.begin();
    Monomial t(a.nvars);
    for (std::size_t i = 0; i < a.nvars; ++i) {
      t[i] = rm[i] - lm[i];
      if (t[i] < 0) return std::nullopt;
    }
    Poly step;
    step.nvars = a.nvars;
    step.add_term(t, rc / lc);
    q = add(q, step);
    r = add(r, mul(step, b), Rational(-1));
  }
  return q;
}

Poly gcd(const Poly& a, const Poly& b);

/// GCD of the coefficients of a viewed as a polynomial in x.
Poly content(const Poly& a, std::size_t x) {
  const int d = degree(a, x);
  Poly g;
  g.nvars = a.nvars;
  for (int i = d; i >= 0; --i) {
    const Poly c = coeff(a, x, i);
    if (c.zero()) continue;
    g = g.zero() ? c : gcd(g, c);
    if (g.constant()) break;
  }
  return g;
}

Poly normalized(const Poly& a) {
  if (a.zero()) return a;
  return scale(a, Rational(1) / a.terms.begin()->second);
}

Poly prem(const Poly& a, const Poly& b, std::size_t x) {
  const int db = degree(b, x);
  const Poly lc = coeff(b, x, db);
  Poly r = a;
  for (int dr = degree(r, x); !r.zero() && dr >= db; dr = degree(r, x)) {
    const Poly t = mul(coeff(r, x, dr), monomial_poly(a.nvars, x, dr - db));
    r = add(mul(lc, r), mul(t, b), Rational(-1));
  }
  return r;
}

std::optional<std::size_t> main_variable(const Poly& a, const Poly& b) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < a.nvars; ++i) {
    if (degree(a, i) > 0 || degree(b, i) > 0) return i;
  }
  return best;
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.zero()) return normalized(b);
  if (b.zero()) return normalized(a);
  const auto xv = main_variable(a, b);
  if (!xv) return constant_poly(Rational(1), a.nvars);
  const std::size_t x = *xv;
  if (degree(a, x) <= 0) return gcd(a, content(b, x));
  if (degree(b, x) <= 0) return gcd(content(a, x), b);
  const Poly ca = content(a, x);
  const Poly cb = content(b, x);
  const Poly c = gcd(ca, cb);
  Poly pa = *exact_div(a, ca);
  Poly pb = *exact_div(b, cb);
  if (degree(pa, x) < degree(pb, x)) std::swap(pa, pb);
  Poly g;
  for (;;) {
    if (pb.zero()) {
      g = pa;
      break;
    }
    if (degree(pb, x) <= 0) {
      g = constant_poly(Rational(1), a.nvars);
      break;
    }
    Poly r = prem(pa, pb, x);
    pa = std::move(pb);
    pb = (r.zero() || degree(r, x) <= 0) ? std::move(r) : *exact_div(r, content(r, x));
  }
  if (degree(g, x) > 0) g = *exact_div(g, content(g, x));
  return normalized(mul(c, g));
}

/// Atoms and polynomial form of an expanded expression; nullopt when a term
/// has a negative power or a power of a sum.
struct Converted {
  std::vector<Expr> atoms;
  std::vector<Poly> polys;
};

std::optional<Converted> convert(const std::vector<Expr>& exprs) {
  std::vector<Expr> atoms;
  std::vector<std::vector<std::pair<Rational, std::vector<std::pair<Expr, int>>>>> raw;
  for (const auto& e : exprs) {
    auto& terms = raw.emplace_back();
    for (const auto& t : terms_of(expand_normalize(e))) {
      auto [c, rest] = split_coefficient(t);
      std::vector<std::pair<Expr, int>> powers;
      if (!rest.is_one()) {
        for (const auto& f : factors_of(rest)) {
          Expr base = f;
          std::int64_t ex = 1;
          if (f.kind() == Kind::Power) {
            base = f.base();
            ex = f.exponent();
          }
          if (ex < 0 || base.kind() == Kind::Sum || base.kind() == Kind::Number) return std::nullopt;
          powers.emplace_back(base, static_cast<int>(ex));
          if (std::find(atoms.begin(), atoms.end(), base) == atoms.end()) atoms.push_back(base);
        }
      }
      terms.emplace_back(c, std::move(powers));
    }
  }
  std::sort(atoms.begin(), atoms.end(), ExprLess{});
  Converted out;
  out.atoms = atoms;
  for (const auto& terms : raw) {
    Poly p;
    p.nvars = atoms.size();
    for (const auto& [c, powers] : terms) {
      Monomial m(atoms.size(), 0);
      for (const auto& [b, ex] : powers) {
        const auto idx = std::find(atoms.begin(), atoms.end(), b) - atoms.begin();
        m[idx] += ex;
      }
      p.add_term(m, c);
    }
    out.polys.push_back(std::move(p));
  }
  return out;
}

Expr to_expr(const Poly& p, const std::vector<Expr>& atoms) {
  std::vector<Expr> terms;
  for (const auto& [m, c] : p.terms) {
    std::vector<Expr> f{Expr(c)};
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (m[i] > 0) f.push_back(pow(atoms[i], m[i]));
    }
    terms.push_back(make_product(std::move(f)));
  }
  return make_sum(std::move(terms));
}

}  // namespace

std::optional<Expr> polynomial_gcd(const Expr& a, const Expr& b) {
  const auto conv = convert({a, b});
  if (!conv) return std::nullopt;
  return to_expr(gcd(conv->polys[0], conv->polys[1]), conv->atoms);
}

std::optional<Expr> polynomial_quotient(const Expr& a, const Expr& b) {
  const auto conv = convert({a, b});
  if (!conv || conv->polys[1].zero()) return std::nullopt;
  const auto q = exact_div(conv->polys[0], conv->polys[1]);
  if (!q) return std::nullopt;
  return to_expr(*q, conv->atoms);
}

Fraction cancel(const Expr& e) {
  const Fraction f = together(e);
  if (f.numerator.is_zero()) return {Expr(0), Expr(1)};
  Expr num = f.numerator;
  std::vector<Expr> den;
  for (const auto& factor : factors_of(f.denominator)) {
    Expr base = factor;
    std::int64_t m = 1;
    if (factor.kind() == Kind::Power) {
      base = factor.base();
      m = factor.exponent();
    }
    std::int64_t left = m;
    while (left > 0) {
      const auto g = polynomial_gcd(num, base);
      if (!g || g->is_number()) break;
      const auto qn = polynomial_quotient(num, *g);
      const auto qb = polynomial_quotient(base, *g);
      if (!qn || !qb) break;
      num = *qn;
      if (qb->is_number()) {
        num = expand_normalize(num * pow(*qb, -1));
        --left;
        continue;
      }
      den.push_back(*qb);
      --left;
    }
    if (left > 0) den.push_back(pow(base, left));
  }
  // Give each remaining denominator factor a positive leading coefficient.
  std::vector<Expr> out_den;
  for (auto& d : den) {
    const Expr ex = expand_normalize(d);
    const auto ts = terms_of(ex.kind() == Kind::Power ? ex.base() : ex);
    if (!ts.empty() && split_coefficient(ts.back()).first.is_negative() && ex.kind() != Kind::Power) {
      out_den.push_back(expand_normalize(-ex));
      num = expand_normalize(-num);
    } else {
      out_den.push_back(ex);
    }
  }
  return {num, make_product(std::move(out_den))};
}

}  // namespace fracwave::symexpr
