#include "fracwave/calculus.hpp"

#include <limits>
#include <vector>

#include "fracwave/error.hpp"

namespace fracwave::symexpr {

namespace {

Expr rebuild(const Expr& e, std::vector<Expr> children) {
  switch (e.kind()) {
    case Kind::Sum:
      return make_sum(std::move(children));
    case Kind::Product:
      return make_product(std::move(children));
    case Kind::Power:
      return pow(children.front(), e.exponent());
    case Kind::Function:
      return apply(e.func(), std::move(children));
    case Kind::Derivative:
      return derivative_marker(children.front(), e.variable(), e.order());
    default:
      return e;
  }
}

}  // namespace

Expr rewrite(const Expr& e, const std::function<std::optional<Expr>(const Expr&)>& visit) {
  if (auto r = visit(e)) return *r;
  if (e.children().empty()) return e;
  std::vector<Expr> kids;
  kids.reserve(e.children().size());
  bool changed = false;
  for (const auto& c : e.children()) {
    kids.push_back(rewrite(c, visit));
    changed = changed || !kids.back().same_node(c);
  }
  return changed ? rebuild(e, std::move(kids)) : e;
}

Expr substitute(const Expr& e, const SymbolBindings& bindings) {
  if (bindings.empty()) return e;
  return rewrite(e, [&](const Expr& n) -> std::optional<Expr> {
    if (n.is_symbol()) {
      auto it = bindings.find(n.name());
      if (it != bindings.end()) return it->second;
    }
    return std::nullopt;
  });
}

bool contains(const Expr& e, const std::function<bool(const Expr&)>& pred) {
  if (pred(e)) return true;
  for (const auto& c : e.children()) {
    if (contains(c, pred)) return true;
  }
  return false;
}

bool contains_symbol(const Expr& e, const std::string& name) {
  return contains(e, [&](const Expr& n) { return n.is_symbol() && n.name() == name; });
}

std::set<std::string> free_symbols(const Expr& e) {
  std::set<std::string> out;
  contains(e, [&](const Expr& n) {
    if (n.is_symbol()) out.insert(n.name());
    return false;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

class Differentiator {
 public:
  Differentiator(const std::string& var, const DiffOptions& opts) : var_(var), opts_(opts) {}

  Expr d(const Expr& e) {
    if (!depends(e)) return Expr();
    switch (e.kind()) {
      case Kind::Number:
        return Expr();
      case Kind::Symbol:
        if (e.name() == var_) return Expr(1);
        return unresolved(e);
      case Kind::Sum: {
        std::vector<Expr> parts;
        for (const auto& t : e.children()) parts.push_back(d(t));
        return make_sum(std::move(parts));
      }
      case Kind::Product: {
        const auto f = e.children();
        std::vector<Expr> parts;
        for (std::size_t i = 0; i < f.size(); ++i) {
          Expr di = d(f[i]);
          if (di.is_zero()) continue;
          std::vector<Expr> prod{di};
          for (std::size_t j = 0; j < f.size(); ++j) {
            if (j != i) prod.push_back(f[j]);
          }
          parts.push_back(make_product(std::move(prod)));
        }
        return make_sum(std::move(parts));
      }
      case Kind::Power: {
        const std::int64_t n = e.exponent();
        return make_product({Expr(n), pow(e.base(), n - 1), d(e.base())});
      }
      case Kind::Function:
        return function(e);
      case Kind::Derivative:
        if (e.variable() == var_) return unresolved(e);
        throw InvalidArgument("mixed derivative marker " + e.str() + " cannot be differentiated in " + var_);
    }
    return Expr();
  }

 private:
  bool depends(const Expr& e) const {
    return contains(e, [&](const Expr& n) {
      if (n.is_symbol()) return n.name() == var_ || opts_.function_symbols.count(n.name()) > 0;
      return n.kind() == Kind::Derivative && n.variable() == var_;
    });
  }

  Expr unresolved(const Expr& e) const {
    if (!opts_.allow_unresolved) {
      throw InvalidArgument("derivative of unknown function " + e.str() + " with respect to " + var_);
    }
    return derivative_marker(e, var_, 1);
  }

  Expr function(const Expr& e) {
    const Expr& u = e.children().front();
    const Expr du = d(u);
    if (du.is_zero()) return Expr();
    switch (e.func()) {
      case Func::Exp:
        return e * du;
      case Func::Ln:
        return du * pow(u, -1);
      case Func::Sqrt:
        return make_product({frac(1, 2), du, pow(e, -1)});
      case Func::Tanh:
      case Func::Coth:
        return (Expr(1) - pow(e, 2)) * du;
      case Func::Tan:
        return (Expr(1) + pow(e, 2)) * du;
      case Func::Cot:
        return -(Expr(1) + pow(e, 2)) * du;
      case Func::Sign:
        return Expr();
      case Func::Abs:
        return apply(Func::Sign, u) * du;
      case Func::Gamma:
        throw InvalidArgument("derivative of gamma(" + u.str() + ") is not supported");
    }
    return Expr();
  }

  const std::string& var_;
  const DiffOptions& opts_;
};

}  // namespace

Expr differentiate(const Expr& e, const std::string& var, int order, const DiffOptions& opts) {
  if (order < 1) throw InvalidArgument("derivative order must be positive");
  Differentiator diff(var, opts);
  Expr out = e;
  for (int i = 0; i < order; ++i) out = diff.d(out);
  return out;
}

// ---------------------------------------------------------------------------
// Expansion

Expr multiply_expanded(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  if (a.kind() != Kind::Sum && b.kind() != Kind::Sum) return make_product({a, b});
  const auto ta = terms_of(a);
  const auto tb = terms_of(b);
  std::vector<Expr> out;
  out.reserve(ta.size() * tb.size());
  for (const auto& x : ta) {
    for (const auto& y : tb) out.push_back(make_product({x, y}));
  }
  return make_sum(std::move(out));
}

namespace {

class Expander {
 public:
  Expr run(const Expr& e) {
    if (e.children().empty()) return e;
    switch (e.kind()) {
      case Kind::Sum: {
        std::vector<Expr> parts;
        parts.reserve(e.children().size());
        for (const auto& t : e.children()) parts.push_back(run(t));
        return make_sum(std::move(parts));
      }
      case Kind::Product: {
        Expr acc(1);
        for (const auto& f : e.children()) acc = multiply_expanded(acc, run(f));
        return acc;
      }
      case Kind::Power: {
        const Expr b = run(e.base());
        const std::int64_t n = e.exponent();
        if (b.kind() == Kind::Sum && n > 0) return power(b, n);
        if (b.kind() == Kind::Product && n > 0) {
          Expr acc(1);
          for (const auto& f : b.children()) acc = multiply_expanded(acc, run(pow(f, n)));
          return acc;
        }
        return pow(b, n);
      }
      case Kind::Function: {
        std::vector<Expr> args;
        for (const auto& a : e.children()) args.push_back(run(a));
        return apply(e.func(), std::move(args));
      }
      case Kind::Derivative:
        return derivative_marker(run(e.operand()), e.variable(), e.order());
      default:
        return e;
    }
  }

 private:
  Expr power(const Expr& b, std::int64_t n) {
    Expr result(1);
    Expr sq = b;
    while (n > 0) {
      if (n & 1) result = multiply_expanded(result, sq);
      n >>= 1;
      if (n) sq = multiply_expanded(sq, sq);
    }
    return result;
  }
};

}  // namespace

Expr expand_normalize(const Expr& e) { return Expander().run(e); }

std::map<int, Expr> collect_powers(const Expr& e, const std::string& kernel) {
  const Expr ex = expand_normalize(e);
  std::map<int, std::vector<Expr>> buckets;
  for (const auto& t : terms_of(ex)) {
    std::int64_t degree = 0;
    std::vector<Expr> rest;
    for (const auto& f : factors_of(t)) {
      if (f.is_symbol() && f.name() == kernel) {
        degree += 1;
      } else if (f.kind() == Kind::Power && f.base().is_symbol() && f.base().name() == kernel) {
        degree += f.exponent();
      } else if (contains_symbol(f, kernel)) {
        throw InvalidArgument("kernel " + kernel + " occurs non-polynomially in " + f.str());
      } else {
        rest.push_back(f);
      }
    }
    if (degree > std::numeric_limits<int>::max() || degree < std::numeric_limits<int>::min()) {
      throw InvalidArgument("kernel degree out of range");
    }
    buckets[static_cast<int>(degree)].push_back(make_product(std::move(rest)));
  }
  std::map<int, Expr> out;
  for (auto& [d, parts] : buckets) {
    Expr c = make_sum(std::move(parts));
    if (!c.is_zero()) out.emplace(d, std::move(c));
  }
  return out;
}

Expr from_powers(const std::map<int, Expr>& coeffs, const std::string& kernel) {
  std::vector<Expr> terms;
  const Expr k = Expr::symbol(kernel);
  for (const auto& [d, c] : coeffs) terms.push_back(c * pow(k, d));
  return make_sum(std::move(terms));
}

Fraction together(const Expr& e) {
  const Expr ex = expand_normalize(e);
  const auto terms = terms_of(ex);
  // Denominator factors and, per term, the negative-power factors it carries.
  std::map<Expr, std::int64_t, ExprLess> common;
  std::vector<std::pair<std::vector<Expr>, std::map<Expr, std::int64_t, ExprLess>>> split;
  split.reserve(terms.size());
  for (const auto& t : terms) {
    std::vector<Expr> pos;
    std::map<Expr, std::int64_t, ExprLess> neg;
    for (const auto& f : factors_of(t)) {
      if (f.kind() == Kind::Power && f.exponent() < 0) {
        neg[f.base()] += -f.exponent();
        auto& slot = common[f.base()];
        slot = std::max(slot, -f.exponent());
      } else {
        pos.push_back(f);
      }
    }
    split.emplace_back(std::move(pos), std::move(neg));
  }
  if (common.empty()) return {ex, Expr(1)};

  std::vector<Expr> numer_terms;
  numer_terms.reserve(split.size());
  for (auto& [pos, neg] : split) {
    std::vector<Expr> factors = pos;
    for (const auto& [b, m] : common) {
      auto it = neg.find(b);
      const std::int64_t have = it == neg.end() ? 0 : it->second;
      if (m - have > 0) factors.push_back(pow(b, m - have));
    }
    numer_terms.push_back(expand_normalize(make_product(std::move(factors))));
  }
  Expr numer = make_sum(std::move(numer_terms));

  // Cancel symbol powers shared by every numerator term and the denominator.
  if (!numer.is_zero()) {
    for (auto& [b, m] : common) {
      if (!b.is_symbol()) continue;
      std::int64_t shared = m;
      for (const auto& t : terms_of(numer)) {
        std::int64_t have = 0;
        for (const auto& f : factors_of(t)) {
          if (f == b) have = 1;
          if (f.kind() == Kind::Power && f.base() == b && f.exponent() > 0) have = f.exponent();
        }
        shared = std::min(shared, have);
      }
      if (shared > 0) {
        numer = expand_normalize(numer * pow(b, -shared));
        m -= shared;
      }
    }
  }
  std::vector<Expr> den;
  for (const auto& [b, m] : common) {
    if (m > 0) den.push_back(pow(b, m));
  }
  return {numer, make_product(std::move(den))};
}

Expr eliminate_radical_squares(const Expr& e) {
  Expr cur = expand_normalize(e);
  for (int guard = 0; guard < 64; ++guard) {
    Expr next = rewrite(cur, [](const Expr& n) -> std::optional<Expr> {
      if (n.kind() == Kind::Power && n.base().kind() == Kind::Function && n.base().func() == Func::Sqrt) {
        const std::int64_t k = n.exponent();
        if (k >= 2 || k <= -2) {
          std::int64_t q = k / 2;
          std::int64_t rem = k - 2 * q;
          if (rem < 0) {
            q -= 1;
            rem += 2;
          }
          const Expr& radicand = n.base().children().front();
          return make_product({pow(radicand, q), pow(n.base(), rem)});
        }
      }
      return std::nullopt;
    });
    next = expand_normalize(next);
    if (next == cur) return next;
    cur = std::move(next);
  }
  throw InvalidArgument("radical elimination did not reach a fixed point");
}

std::optional<int> polynomial_degree(const Expr& e, const std::string& name) {
  const Expr ex = expand_normalize(e);
  int best = 0;
  for (const auto& t : terms_of(ex)) {
    int deg = 0;
    for (const auto& f : factors_of(t)) {
      if (f.is_symbol() && f.name() == name) {
        deg += 1;
      } else if (f.kind() == Kind::Power && f.base().is_symbol() && f.base().name() == name) {
        if (f.exponent() < 0) return std::nullopt;
        deg += static_cast<int>(f.exponent());
      } else if (contains_symbol(f, name)) {
        return std::nullopt;
      }
    }
    best = std::max(best, deg);
  }
  return best;
}

}  // namespace fracwave::symexpr
