#pragma once

// Test-side oracles: an independent round-to-nearest MPFR evaluator, random
// term generators and a plain bisection root finder.

#include <mpfr.h>

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cinf/box.hpp"
#include "cinf/term.hpp"

namespace oracle {

using cinf::Kind;
using cinf::Point;
using cinf::Rational;
using cinf::Term;

/// Scalar MPFR value with value semantics.
class Real {
 public:
  explicit Real(mpfr_prec_t p = 256) { mpfr_init2(v_, p); mpfr_set_zero(v_, 1); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  ~Real() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double d() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool nan() const { return mpfr_nan_p(v_) != 0; }

 private:
  mpfr_t v_;
};

inline Real from_rational(const Rational& q, mpfr_prec_t p) {
  Real r(p);
  mpfr_set_q(r.get(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

/// Evaluates t at x with plain MPFR calls; guarded primitives become sqrt and
/// 1/x with no positivity bookkeeping. NaN signals a domain failure.
inline Real eval(const Term& t, const Point& x, mpfr_prec_t p = 256) {
  Real r(p);
  auto un = [&](int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) {
    Real a = eval(t.child(0), x, p);
    fn(r.get(), a.get(), MPFR_RNDN);
    return r;
  };
  switch (t.kind()) {
    case Kind::Var: {
      auto it = x.find(t.name());
      if (it == x.end()) {
        mpfr_set_nan(r.get());
        return r;
      }
      return from_rational(it->second, p);
    }
    case Kind::Const: return from_rational(t.value(), p);
    case Kind::Add:
      for (const auto& c : t.children()) {
        Real a = eval(c, x, p);
        mpfr_add(r.get(), r.get(), a.get(), MPFR_RNDN);
      }
      return r;
    case Kind::Mul:
      mpfr_set_ui(r.get(), 1, MPFR_RNDN);
      for (const auto& c : t.children()) {
        Real a = eval(c, x, p);
        mpfr_mul(r.get(), r.get(), a.get(), MPFR_RNDN);
      }
      return r;
    case Kind::Sub: {
      Real a = eval(t.child(0), x, p), b = eval(t.child(1), x, p);
      mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
      return r;
    }
    case Kind::Neg: return un(mpfr_neg);
    case Kind::PowNat: {
      Real a = eval(t.child(0), x, p);
      mpfr_pow_ui(r.get(), a.get(), t.exponent(), MPFR_RNDN);
      return r;
    }
    case Kind::Exp: return un(mpfr_exp);
    case Kind::Sin: return un(mpfr_sin);
    case Kind::Cos: return un(mpfr_cos);
    case Kind::Atan: return un(mpfr_atan);
    case Kind::Tanh: return un(mpfr_tanh);
    case Kind::PSqrt: {
      Real a = eval(t.child(0), x, p);
      if (mpfr_sgn(a.get()) < 0) mpfr_set_nan(r.get());
      else mpfr_sqrt(r.get(), a.get(), MPFR_RNDN);
      return r;
    }
    case Kind::PInv: {
      Real a = eval(t.child(0), x, p);
      if (mpfr_sgn(a.get()) <= 0) mpfr_set_nan(r.get());
      else mpfr_ui_div(r.get(), 1, a.get(), MPFR_RNDN);
      return r;
    }
    case Kind::BoxBump: {
      mpfr_set_ui(r.get(), 1, MPFR_RNDN);
      for (const auto& ax : t.axes()) {
        auto it = x.find(ax.var);
        if (it == x.end()) {
          mpfr_set_nan(r.get());
          return r;
        }
        if (!(ax.lo < it->second && it->second < ax.hi)) {
          mpfr_set_zero(r.get(), 1);
          return r;
        }
        Rational q = (it->second - ax.lo) * (ax.hi - it->second);
        Real f = from_rational(-1 / q, p);
        mpfr_exp(f.get(), f.get(), MPFR_RNDN);
        mpfr_mul(r.get(), r.get(), f.get(), MPFR_RNDN);
      }
      return r;
    }
  }
  mpfr_set_nan(r.get());
  return r;
}

inline double eval_d(const Term& t, const Point& x, mpfr_prec_t p = 256) {
  return eval(t, x, p).d();
}

/// Central difference of t in v at x with step h, in 256-bit arithmetic.
inline double central_difference(const Term& t, const std::string& v, const Point& x, double h) {
  Point a = x, b = x;
  Rational step(h);
  a[v] -= step;
  b[v] += step;
  Real fa = eval(t, a), fb = eval(t, b);
  Real out(256);
  mpfr_sub(out.get(), fb.get(), fa.get(), MPFR_RNDN);
  Real den = from_rational(2 * step, 256);
  mpfr_div(out.get(), out.get(), den.get(), MPFR_RNDN);
  return out.d();
}

/// Bisection on a sign change of t in v over [a, b] at 512 bits.
inline Real bisect_root(const Term& t, const std::string& v, Rational a, Rational b,
                        int iterations = 200) {
  auto sgn = [&](const Rational& q) { return mpfr_sgn(eval(t, {{v, q}}, 512).get()); };
  int sa = sgn(a);
  for (int i = 0; i < iterations; ++i) {
    Rational m = (a + b) / 2;
    int sm = sgn(m);
    if (sm == 0) return from_rational(m, 512);
    if (sm == sa) a = m;
    else b = m;
  }
  return from_rational((a + b) / 2, 512);
}

/// Dyadic rational uniformly drawn from [lo, hi] with denominator 2^bits.
inline Rational dyadic(std::mt19937_64& rng, const Rational& lo, const Rational& hi,
                       unsigned bits = 10) {
  std::uint64_t den = 1ull << bits;
  std::uniform_int_distribution<std::uint64_t> d(0, den);
  Rational t(static_cast<unsigned long>(d(rng)), static_cast<unsigned long>(den));
  Rational r = lo + (hi - lo) * t;
  r.canonicalize();
  return r;
}

inline Point random_point(std::mt19937_64& rng, const cinf::Box& b, unsigned bits = 10) {
  Point p;
  for (const auto& [v, r] : b.ranges()) p[v] = dyadic(rng, r.lo, r.hi, bits);
  return p;
}

/// Random total terms over the given variables (no guarded primitives).
class TermGen {
 public:
  TermGen(std::uint64_t seed, std::vector<std::string> vars)
      : rng_(seed), vars_(std::move(vars)) {}

  std::mt19937_64& rng() { return rng_; }

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  Rational small_rational() {
    int num = pick(9) - 4;
    int den = 1 << pick(3);
    return Rational(num, den);
  }

  Term leaf() {
    if (pick(3) == 0) return cinf::constant(small_rational());
    return cinf::var(vars_[pick(static_cast<int>(vars_.size()))]);
  }

  Term term(int depth) {
    if (depth <= 0) return leaf();
    switch (pick(10)) {
      case 0: return cinf::add(term(depth - 1), term(depth - 1));
      case 1: return cinf::sub(term(depth - 1), term(depth - 1));
      case 2: return cinf::mul(term(depth - 1), term(depth - 1));
      case 3: return cinf::neg(term(depth - 1));
      case 4: return cinf::pow(term(depth - 1), 2 + pick(2));
      case 5: return cinf::exp(term(depth - 1));
      case 6: return cinf::sin(term(depth - 1));
      case 7: return cinf::cos(term(depth - 1));
      case 8: return cinf::atan(term(depth - 1));
      default: return cinf::tanh(term(depth - 1));
    }
  }

 private:
  std::mt19937_64 rng_;
  std::vector<std::string> vars_;
};

}  // namespace oracle
