#include "fracwave/eval.hpp"

#include <cmath>

#include "fracwave/error.hpp"
#include "fracwave/fracderiv.hpp"

namespace fracwave::symexpr {

namespace {

[[noreturn]] void domain(const std::string& what, const Expr& where) {
  throw DomainError(what + " in " + where.str());
}

bool finite(double v) { return std::isfinite(v); }
bool finite(const Complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

template <typename T>
class Evaluator {
 public:
  explicit Evaluator(const NumericBindings& b) : bindings_(b) {}

  T eval(const Expr& e) {
    T v = raw(e);
    if (!finite(v)) domain("non-finite value", e);
    return v;
  }

 private:
  T raw(const Expr& e) {
    switch (e.kind()) {
      case Kind::Number:
        return T(e.value().to_double());
      case Kind::Symbol: {
        auto it = bindings_.find(e.name());
        if (it == bindings_.end()) throw DomainError("unbound symbol '" + e.name() + "'");
        return T(it->second);
      }
      case Kind::Sum: {
        T acc(0);
        for (const auto& t : e.children()) acc += eval(t);
        return acc;
      }
      case Kind::Product: {
        T acc(1);
        for (const auto& f : e.children()) acc *= eval(f);
        return acc;
      }
      case Kind::Power: {
        const T b = eval(e.base());
        const std::int64_t n = e.exponent();
        if (n < 0 && b == T(0)) domain("division by zero", e);
        return ipow(b, n);
      }
      case Kind::Function:
        return function(e, eval(e.children().front()));
      case Kind::Derivative:
        domain("unresolved derivative marker", e);
    }
    return T(0);
  }

  static T ipow(T b, std::int64_t n) {
    const bool inv = n < 0;
    std::uint64_t m = inv ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    T r(1);
    while (m) {
      if (m & 1) r *= b;
      m >>= 1;
      if (m) b *= b;
    }
    return inv ? T(1) / r : r;
  }

  T function(const Expr& e, const T& u) {
    using std::cos;
    using std::exp;
    using std::log;
    using std::sin;
    using std::sqrt;
    using std::tan;
    using std::tanh;
    switch (e.func()) {
      case Func::Exp:
        return exp(u);
      case Func::Ln:
        if constexpr (std::is_same_v<T, double>) {
          if (u <= 0.0) domain("ln of non-positive value", e);
        } else {
          if (u == T(0)) domain("ln of zero", e);
        }
        return log(u);
      case Func::Sqrt:
        if constexpr (std::is_same_v<T, double>) {
          if (u < 0.0) domain("sqrt of negative value", e);
        }
        return sqrt(u);
      case Func::Tanh:
        return tanh(u);
      case Func::Coth: {
        if (u == T(0)) domain("coth pole", e);
        return T(1) / tanh(u);
      }
      case Func::Tan: {
        if (cos(u) == T(0)) domain("tan pole", e);
        return tan(u);
      }
      case Func::Cot: {
        const T s = sin(u);
        if (s == T(0)) domain("cot pole", e);
        return cos(u) / s;
      }
      case Func::Gamma: {
        const double x = real_part(u, e, "gamma");
        try {
          return T(fracderiv::gamma_fn(x));
        } catch (const DomainError&) {
          domain("gamma pole", e);
        }
      }
      case Func::Sign: {
        const double x = real_part(u, e, "sign");
        return T(x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0));
      }
      case Func::Abs:
        return T(std::abs(u));
    }
    return T(0);
  }

  static double real_part(const T& u, const Expr& e, const char* what) {
    if constexpr (std::is_same_v<T, double>) {
      (void)e;
      (void)what;
      return u;
    } else {
      if (std::abs(u.imag()) > 1e-14 * std::max(1.0, std::abs(u.real()))) {
        domain(std::string(what) + " of complex argument", e);
      }
      return u.real();
    }
  }

  const NumericBindings& bindings_;
};

}  // namespace

double eval_numeric(const Expr& e, const NumericBindings& bindings) { return Evaluator<double>(bindings).eval(e); }

Complex eval_complex(const Expr& e, const NumericBindings& bindings) {
  return Evaluator<Complex>(bindings).eval(e);
}

}  // namespace fracwave::symexpr
