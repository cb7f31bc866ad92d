#include "fracwave/expr.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>

#include "fracwave/error.hpp"

namespace fracwave::symexpr {

struct Expr::Node {
  Kind kind = Kind::Number;
  Rational number;
  std::string text;  // symbol name or derivative variable
  Func func = Func::Exp;
  std::int64_t integer = 0;  // power exponent or derivative order
  std::vector<Expr> children;
  std::size_t hash = 0;
};

namespace {

constexpr std::array<std::string_view, 10> kFuncNames = {"exp",  "ln",  "sqrt",  "tanh", "coth",
                                                          "tan",  "cot", "gamma", "sign", "abs"};

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t fnv(std::string_view s) {
  std::size_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::string_view func_name(Func f) { return kFuncNames[static_cast<std::size_t>(f)]; }

std::optional<Func> func_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kFuncNames.size(); ++i) {
    if (kFuncNames[i] == name) return static_cast<Func>(i);
  }
  return std::nullopt;
}

/// Raw node construction; callers are responsible for canonical form.
struct Builder {
  static Expr make(Expr::Node node) {
    std::size_t h = static_cast<std::size_t>(node.kind) * 31 + 7;
    switch (node.kind) {
      case Kind::Number:
        h = mix(h, fnv(node.number.str()));
        break;
      case Kind::Symbol:
        h = mix(h, fnv(node.text));
        break;
      case Kind::Power:
        h = mix(h, static_cast<std::size_t>(node.integer));
        break;
      case Kind::Function:
        h = mix(h, static_cast<std::size_t>(node.func));
        break;
      case Kind::Derivative:
        h = mix(mix(h, fnv(node.text)), static_cast<std::size_t>(node.integer));
        break;
      default:
        break;
    }
    for (const auto& c : node.children) h = mix(h, c.hash());
    node.hash = h;
    return Expr(std::make_shared<const Expr::Node>(std::move(node)));
  }

  static Expr number(const Rational& r) {
    Expr::Node n;
    n.kind = Kind::Number;
    n.number = r;
    return make(std::move(n));
  }

  static Expr with_children(Kind kind, std::vector<Expr> children) {
    Expr::Node n;
    n.kind = kind;
    n.children = std::move(children);
    return make(std::move(n));
  }

  static Expr power(const Expr& base, std::int64_t exponent) {
    Expr::Node n;
    n.kind = Kind::Power;
    n.integer = exponent;
    n.children = {base};
    return make(std::move(n));
  }

  static Expr function(Func f, std::vector<Expr> args) {
    Expr::Node n;
    n.kind = Kind::Function;
    n.func = f;
    n.children = std::move(args);
    return make(std::move(n));
  }

  static Expr derivative(const Expr& operand, std::string var, int order) {
    Expr::Node n;
    n.kind = Kind::Derivative;
    n.text = std::move(var);
    n.integer = order;
    n.children = {operand};
    return make(std::move(n));
  }
};

namespace {

const Expr& zero_expr() {
  static const Expr z = Builder::number(Rational(0));
  return z;
}

const Expr& one_expr() {
  static const Expr o = Builder::number(Rational(1));
  return o;
}

}  // namespace

Expr::Expr() : node_(zero_expr().node_) {}
Expr::Expr(std::int64_t value) : Expr(Rational(value)) {}
Expr::Expr(const Rational& value) : node_(Builder::number(value).node_) {}

Expr Expr::symbol(std::string name) {
  if (name.empty()) throw InvalidArgument("empty symbol name");
  Node n;
  n.kind = Kind::Symbol;
  n.text = std::move(name);
  return Builder::make(std::move(n));
}

Kind Expr::kind() const { return node_->kind; }
bool Expr::is_zero() const { return node_->kind == Kind::Number && node_->number.is_zero(); }
bool Expr::is_one() const { return node_->kind == Kind::Number && node_->number.is_one(); }
const Rational& Expr::value() const { return node_->number; }
const std::string& Expr::name() const { return node_->text; }
Func Expr::func() const { return node_->func; }
std::int64_t Expr::exponent() const { return node_->integer; }
const Expr& Expr::base() const { return node_->children.front(); }
int Expr::order() const { return static_cast<int>(node_->integer); }
const std::string& Expr::variable() const { return node_->text; }
const Expr& Expr::operand() const { return node_->children.front(); }
std::span<const Expr> Expr::children() const { return node_->children; }
std::size_t Expr::hash() const { return node_->hash; }
std::string Expr::str() const { return format(*this); }

int compare(const Expr& a, const Expr& b) {
  if (a.same_node(b)) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Kind::Number:
      if (a.value() == b.value()) return 0;
      return a.value() < b.value() ? -1 : 1;
    case Kind::Symbol:
      return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case Kind::Power: {
      if (int c = compare(a.base(), b.base())) return c;
      if (a.exponent() == b.exponent()) return 0;
      return a.exponent() < b.exponent() ? -1 : 1;
    }
    case Kind::Function:
      if (a.func() != b.func()) return a.func() < b.func() ? -1 : 1;
      break;
    case Kind::Derivative:
      if (a.variable() != b.variable()) return a.variable() < b.variable() ? -1 : 1;
      if (a.order() != b.order()) return a.order() < b.order() ? -1 : 1;
      break;
    default:
      break;
  }
  if (a.hash() == b.hash() && a.children().size() == b.children().size()) {
    // Fall through to the structural walk; equal hashes are common for equal trees.
  }
  auto ac = a.children();
  auto bc = b.children();
  const std::size_t n = std::min(ac.size(), bc.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare(ac[i], bc[i])) return c;
  }
  if (ac.size() == bc.size()) return 0;
  return ac.size() < bc.size() ? -1 : 1;
}

std::pair<Rational, Expr> split_coefficient(const Expr& term) {
  if (term.is_number()) return {term.value(), one_expr()};
  if (term.kind() == Kind::Product) {
    auto f = term.children();
    if (f.front().is_number()) {
      if (f.size() == 2) return {f.front().value(), f[1]};
      return {f.front().value(), Builder::with_children(Kind::Product, {f.begin() + 1, f.end()})};
    }
  }
  return {Rational(1), term};
}

std::vector<Expr> terms_of(const Expr& e) {
  if (e.kind() == Kind::Sum) return {e.children().begin(), e.children().end()};
  return {e};
}

std::vector<Expr> factors_of(const Expr& e) {
  if (e.kind() == Kind::Product) return {e.children().begin(), e.children().end()};
  return {e};
}

namespace {

/// Builds coeff * rest where rest is already a canonical product part.
Expr scale_term(const Rational& coeff, const Expr& rest) {
  if (coeff.is_zero()) return zero_expr();
  if (rest.is_one()) return Expr(coeff);
  if (coeff.is_one()) return rest;
  std::vector<Expr> factors;
  factors.reserve(rest.children().size() + 1);
  factors.emplace_back(coeff);
  if (rest.kind() == Kind::Product) {
    factors.insert(factors.end(), rest.children().begin(), rest.children().end());
  } else {
    factors.push_back(rest);
  }
  return Builder::with_children(Kind::Product, std::move(factors));
}

}  // namespace

Expr make_sum(std::vector<Expr> terms) {
  Rational constant;
  std::map<Expr, Rational, ExprLess> like;
  // Work list so that sums found inside scaled terms are flattened too.
  std::vector<std::pair<Rational, Expr>> work;
  work.reserve(terms.size());
  for (auto& t : terms) work.emplace_back(Rational(1), std::move(t));
  while (!work.empty()) {
    auto [scale, t] = std::move(work.back());
    work.pop_back();
    if (t.is_number()) {
      constant += scale * t.value();
      continue;
    }
    if (t.kind() == Kind::Sum) {
      for (const auto& c : t.children()) work.emplace_back(scale, c);
      continue;
    }
    auto [coeff, rest] = split_coefficient(t);
    if (rest.kind() == Kind::Sum) {
      for (const auto& c : rest.children()) work.emplace_back(scale * coeff, c);
      continue;
    }
    auto it = like.find(rest);
    if (it == like.end()) {
      like.emplace(rest, scale * coeff);
    } else {
      it->second += scale * coeff;
    }
  }
  std::vector<Expr> out;
  out.reserve(like.size() + 1);
  if (!constant.is_zero()) out.emplace_back(constant);
  for (const auto& [rest, coeff] : like) {
    if (!coeff.is_zero()) out.push_back(scale_term(coeff, rest));
  }
  if (out.empty()) return zero_expr();
  if (out.size() == 1) return out.front();
  return Builder::with_children(Kind::Sum, std::move(out));
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw DomainError("integer exponent overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw DomainError("integer exponent overflow");
  return r;
}

}  // namespace

Expr make_product(std::vector<Expr> factors) {
  Rational coeff(1);
  std::map<Expr, std::int64_t, ExprLess> powers;
  std::vector<Expr> work = std::move(factors);
  while (!work.empty()) {
    Expr f = std::move(work.back());
    work.pop_back();
    switch (f.kind()) {
      case Kind::Number:
        coeff *= f.value();
        break;
      case Kind::Product:
        work.insert(work.end(), f.children().begin(), f.children().end());
        break;
      case Kind::Power: {
        auto [it, inserted] = powers.emplace(f.base(), f.exponent());
        if (!inserted) it->second = checked_add(it->second, f.exponent());
        break;
      }
      default: {
        auto [it, inserted] = powers.emplace(f, 1);
        if (!inserted) it->second = checked_add(it->second, 1);
        break;
      }
    }
  }
  if (coeff.is_zero()) return zero_expr();
  std::vector<Expr> out;
  for (const auto& [b, e] : powers) {
    if (e == 0) continue;
    Expr p = pow(b, e);
    // pow can fold to a number (e.g. sign(x)^2) or distribute further.
    if (p.is_number()) {
      coeff *= p.value();
    } else if (p.kind() == Kind::Product) {
      for (const auto& c : p.children()) {
        if (c.is_number()) {
          coeff *= c.value();
        } else {
          out.push_back(c);
        }
      }
    } else {
      out.push_back(std::move(p));
    }
  }
  if (out.empty()) return Expr(coeff);
  std::sort(out.begin(), out.end(), [](const Expr& a, const Expr& b) {
    const Expr& ba = a.kind() == Kind::Power ? a.base() : a;
    const Expr& bb = b.kind() == Kind::Power ? b.base() : b;
    if (int c = compare(ba, bb)) return c < 0;
    return compare(a, b) < 0;
  });
  // Distributing a power over a product may have produced repeated bases.
  for (std::size_t i = 1; i < out.size(); ++i) {
    const Expr& ba = out[i - 1].kind() == Kind::Power ? out[i - 1].base() : out[i - 1];
    const Expr& bb = out[i].kind() == Kind::Power ? out[i].base() : out[i];
    if (ba == bb) {
      std::vector<Expr> again = out;
      again.emplace_back(coeff);
      return make_product(std::move(again));
    }
  }
  if (coeff.is_one() && out.size() == 1) return out.front();
  if (!coeff.is_one()) out.insert(out.begin(), Expr(coeff));
  return Builder::with_children(Kind::Product, std::move(out));
}

Expr pow(const Expr& base, std::int64_t exponent) {
  if (exponent == 0) return one_expr();
  if (exponent == 1) return base;
  switch (base.kind()) {
    case Kind::Number:
      return Expr(base.value().pow(exponent));
    case Kind::Power:
      return pow(base.base(), checked_mul(base.exponent(), exponent));
    case Kind::Product: {
      std::vector<Expr> parts;
      parts.reserve(base.children().size());
      for (const auto& f : base.children()) parts.push_back(pow(f, exponent));
      return make_product(std::move(parts));
    }
    case Kind::Function:
      // sign(u)^2 = 1 wherever sign(u) is defined and non-zero.
      if (base.func() == Func::Sign) return exponent % 2 == 0 ? one_expr() : base;
      break;
    default:
      break;
  }
  return Builder::power(base, exponent);
}

namespace {

/// Rational content (gcd of numerators over lcm of denominators) of a sum's
/// coefficients, or the coefficient of a single term.
Rational coefficient_content(const Expr& e) {
  using Int = Rational::Integer;
  Int g = 0;
  Int l = 1;
  for (const auto& t : terms_of(e)) {
    const Rational c = split_coefficient(t).first;
    g = boost::multiprecision::gcd(g, boost::multiprecision::abs(c.numerator()));
    l = boost::multiprecision::lcm(l, c.denominator());
  }
  if (g == 0) return Rational(1);
  return Rational(g, l);
}

Expr fold_sqrt(const Expr& arg) {
  if (arg.is_number()) {
    if (auto r = arg.value().exact_sqrt()) return Expr(*r);
  }
  const Rational content = coefficient_content(arg);
  const Rational s = content.square_content();
  if (!s.is_one()) {
    const Expr inner = make_sum({make_product({Expr(Rational(1) / (s * s)), arg})});
    return make_product({Expr(s), Builder::function(Func::Sqrt, {inner})});
  }
  return Builder::function(Func::Sqrt, {arg});
}

}  // namespace

Expr apply(Func f, std::vector<Expr> args) {
  const std::size_t arity = 1;
  if (args.size() != arity) {
    throw InvalidArgument(std::string(func_name(f)) + " expects " + std::to_string(arity) + " argument");
  }
  const Expr& a = args.front();
  switch (f) {
    case Func::Exp:
      if (a.is_zero()) return one_expr();
      if (a.kind() == Kind::Function && a.func() == Func::Ln) return a.children().front();
      if (a.kind() == Kind::Product && a.children().size() == 2 && a.children()[0].is_number() &&
          a.children()[0].value().is_integer() && a.children()[1].kind() == Kind::Function &&
          a.children()[1].func() == Func::Ln) {
        if (auto n = a.children()[0].value().to_int64()) return pow(a.children()[1].children().front(), *n);
      }
      break;
    case Func::Ln:
      if (a.is_one()) return zero_expr();
      if (a.is_number() && a.value().sign() <= 0) throw DomainError("ln of non-positive number " + a.str());
      if (a.kind() == Kind::Function && a.func() == Func::Exp) return a.children().front();
      break;
    case Func::Sqrt:
      if (a.is_number() && a.value().is_negative()) break;
      return fold_sqrt(a);
    case Func::Tanh:
    case Func::Tan:
      if (a.is_zero()) return zero_expr();
      break;
    case Func::Coth:
    case Func::Cot:
      if (a.is_zero()) throw DomainError(std::string(func_name(f)) + "(0) is a pole");
      break;
    case Func::Gamma:
      if (a.is_number() && a.value().is_integer()) {
        const auto n = a.value().to_int64();
        if (n && *n <= 0) throw DomainError("gamma pole at " + a.str());
        if (n && *n <= 21) {
          Rational r(1);
          for (std::int64_t i = 2; i < *n; ++i) r *= Rational(i);
          return Expr(r);
        }
      }
      break;
    case Func::Sign:
      if (a.is_number()) return Expr(Rational(a.value().sign()));
      break;
    case Func::Abs:
      if (a.is_number()) return Expr(a.value().abs());
      break;
  }
  return Builder::function(f, std::move(args));
}

Expr derivative_marker(const Expr& operand, std::string variable, int order) {
  if (order < 0) throw InvalidArgument("negative derivative order");
  if (order == 0) return operand;
  if (operand.kind() == Kind::Derivative && operand.variable() == variable) {
    return Builder::derivative(operand.operand(), std::move(variable), operand.order() + order);
  }
  return Builder::derivative(operand, std::move(variable), order);
}

Expr operator+(const Expr& a, const Expr& b) { return make_sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return make_sum({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return make_product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw DomainError("division by zero in " + a.str() + "/0");
  return make_product({a, pow(b, -1)});
}
Expr operator-(const Expr& a) { return make_product({Expr(-1), a}); }

// ---------------------------------------------------------------------------
// Formatting

namespace {

void write(std::ostringstream& os, const Expr& e);

bool needs_parens_as_factor(const Expr& e) {
  return e.kind() == Kind::Sum || (e.is_number() && (e.value().is_negative() || !e.value().is_integer()));
}

void write_factor(std::ostringstream& os, const Expr& f) {
  if (f.kind() == Kind::Power) {
    const Expr& b = f.base();
    if (b.kind() == Kind::Sum || b.kind() == Kind::Product || b.is_number()) {
      os << '(';
      write(os, b);
      os << ')';
    } else {
      write(os, b);
    }
    os << '^' << f.exponent();
    return;
  }
  if (needs_parens_as_factor(f)) {
    os << '(';
    write(os, f);
    os << ')';
    return;
  }
  write(os, f);
}

/// Writes a product, ignoring its sign when `magnitude_only` is set.
void write_product(std::ostringstream& os, const Expr& e, bool magnitude_only) {
  auto [coeff, rest] = split_coefficient(e);
  if (magnitude_only) coeff = coeff.abs();
  if (coeff == Rational(-1)) {
    os << '-';
  } else if (!coeff.is_one()) {
    os << coeff.str() << '*';
  }
  std::vector<Expr> upper;
  std::vector<Expr> lower;
  for (const auto& f : factors_of(rest)) {
    if (f.kind() == Kind::Power && f.exponent() < 0) {
      lower.push_back(f);
    } else {
      upper.push_back(f);
    }
  }
  if (upper.empty()) {
    upper = std::move(lower);
    lower.clear();
  }
  for (std::size_t i = 0; i < upper.size(); ++i) {
    if (i) os << '*';
    write_factor(os, upper[i]);
  }
  if (lower.empty()) return;
  os << '/';
  if (lower.size() > 1) os << '(';
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (i) os << '*';
    const Expr& b = lower[i].base();
    const std::int64_t n = -lower[i].exponent();
    if (n == 1) {
      if (b.kind() == Kind::Sum || b.kind() == Kind::Product || b.is_number()) {
        os << '(';
        write(os, b);
        os << ')';
      } else {
        write(os, b);
      }
    } else {
      write_factor(os, pow(b, n));
    }
  }
  if (lower.size() > 1) os << ')';
}

bool is_negative_term(const Expr& t) { return split_coefficient(t).first.is_negative(); }

void write(std::ostringstream& os, const Expr& e) {
  switch (e.kind()) {
    case Kind::Number:
      os << e.value().str();
      break;
    case Kind::Symbol:
      os << e.name();
      break;
    case Kind::Power:
      write_factor(os, e);
      break;
    case Kind::Product:
      write_product(os, e, false);
      break;
    case Kind::Sum: {
      bool first = true;
      for (const auto& t : e.children()) {
        if (first) {
          write(os, t);
          first = false;
          continue;
        }
        if (is_negative_term(t)) {
          os << " - ";
          if (t.is_number()) {
            os << (-t.value()).str();
          } else {
            write_product(os, t, true);
          }
        } else {
          os << " + ";
          write(os, t);
        }
      }
      break;
    }
    case Kind::Function: {
      os << func_name(e.func()) << '(';
      bool first = true;
      for (const auto& a : e.children()) {
        if (!first) os << ", ";
        write(os, a);
        first = false;
      }
      os << ')';
      break;
    }
    case Kind::Derivative:
      os << "D(";
      write(os, e.operand());
      os << ", " << e.variable() << ", " << e.order() << ')';
      break;
  }
}

}  // namespace

std::string format(const Expr& e) {
  std::ostringstream os;
  write(os, e);
  return os.str();
}

}  // namespace fracwave::symexpr
