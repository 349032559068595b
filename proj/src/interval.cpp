#include "cinf/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace cinf {

namespace {

mpfr_prec_t join(const Interval& a, const Interval& b) { return std::max(a.prec(), b.prec()); }

void min_into(mpfr_ptr dst, mpfr_srcptr x) {
  if (mpfr_less_p(x, dst)) mpfr_set(dst, x, MPFR_RNDD);
}
void max_into(mpfr_ptr dst, mpfr_srcptr x) {
  if (mpfr_greater_p(x, dst)) mpfr_set(dst, x, MPFR_RNDU);
}

// True when some point c + 2k (in units of pi) may lie in [lo, hi].
// Errs towards true.
bool may_contain_phase(mpfr_srcptr lo, mpfr_srcptr hi, double phase) {
  if (!mpfr_number_p(lo) || !mpfr_number_p(hi)) return true;
  mpfr_prec_t p = std::max(mpfr_get_prec(lo), mpfr_get_prec(hi)) + 16;
  Mpfr pi_lo(p), pi_hi(p), a(p), b(p);
  mpfr_const_pi(pi_lo.get(), MPFR_RNDD);
  mpfr_const_pi(pi_hi.get(), MPFR_RNDU);
  // a <= lo/pi, b >= hi/pi
  mpfr_div(a.get(), lo, mpfr_sgn(lo) >= 0 ? pi_hi.get() : pi_lo.get(), MPFR_RNDD);
  mpfr_div(b.get(), hi, mpfr_sgn(hi) >= 0 ? pi_lo.get() : pi_hi.get(), MPFR_RNDU);
  double ad = mpfr_get_d(a.get(), MPFR_RNDD);
  double bd = mpfr_get_d(b.get(), MPFR_RNDU);
  if (std::fabs(ad) > 1e12 || std::fabs(bd) > 1e12) return true;
  double kmin = std::ceil((ad - phase) / 2.0 - 1e-9);
  double kmax = std::floor((bd - phase) / 2.0 + 1e-9);
  return kmin <= kmax;
}

}  // namespace

Interval::Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

Interval Interval::point(const Rational& q, mpfr_prec_t prec) { return of(q, q, prec); }

Interval Interval::of(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_.get(), lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::entire(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_inf(r.lo_.get(), -1);
  mpfr_set_inf(r.hi_.get(), 1);
  return r;
}

void Interval::sanitize() {
  if (mpfr_nan_p(lo_.get())) mpfr_set_inf(lo_.get(), -1);
  if (mpfr_nan_p(hi_.get())) mpfr_set_inf(hi_.get(), 1);
}

bool Interval::contains_zero() const {
  return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}
bool Interval::positive() const { return mpfr_sgn(lo_.get()) > 0; }
bool Interval::negative() const { return mpfr_sgn(hi_.get()) < 0; }
bool Interval::nonnegative() const { return mpfr_sgn(lo_.get()) >= 0; }
bool Interval::nonpositive() const { return mpfr_sgn(hi_.get()) <= 0; }
bool Interval::contains(double x) const {
  return mpfr_cmp_d(lo_.get(), x) <= 0 && mpfr_cmp_d(hi_.get(), x) >= 0;
}
bool Interval::intersects(const Interval& o) const {
  return mpfr_lessequal_p(lo_.get(), o.hi_.get()) && mpfr_lessequal_p(o.lo_.get(), hi_.get());
}
bool Interval::is_bounded() const {
  return mpfr_number_p(lo_.get()) && mpfr_number_p(hi_.get());
}

double Interval::lower_d() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
double Interval::upper_d() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }
double Interval::mid_d() const {
  Mpfr m(prec() + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return mpfr_get_d(m.get(), MPFR_RNDN);
}
double Interval::width_d() const {
  Mpfr w(prec());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return mpfr_get_d(w.get(), MPFR_RNDU);
}
double Interval::magnitude_d() const {
  return std::max(std::fabs(lower_d()), std::fabs(upper_d()));
}

std::string Interval::str(int digits) const {
  auto render = [digits](mpfr_srcptr x, mpfr_rnd_t rnd) {
    char* buf = nullptr;
    mpfr_asprintf(&buf, rnd == MPFR_RNDD ? "%.*RDg" : "%.*RUg", digits, x);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  };
  return "[" + render(lo_.get(), MPFR_RNDD) + ", " + render(hi_.get(), MPFR_RNDU) + "]";
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(join(a, b));
  mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  r.sanitize();
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(join(a, b));
  mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  r.sanitize();
  return r;
}

Interval operator-(const Interval& a) {
  Interval r(a.prec());
  mpfr_neg(r.lo_.get(), a.hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  mpfr_prec_t p = join(a, b);
  Interval r(p);
  Mpfr t(p);
  mpfr_srcptr xs[2] = {a.lo_.get(), a.hi_.get()};
  mpfr_srcptr ys[2] = {b.lo_.get(), b.hi_.get()};
  mpfr_set_inf(r.lo_.get(), 1);
  mpfr_set_inf(r.hi_.get(), -1);
  for (auto x : xs) {
    for (auto y : ys) {
      // 0 * inf contributes 0 to the hull.
      bool zero_inf = (mpfr_zero_p(x) && mpfr_inf_p(y)) || (mpfr_inf_p(x) && mpfr_zero_p(y));
      if (zero_inf) {
        mpfr_set_zero(t.get(), 1);
        min_into(r.lo_.get(), t.get());
        max_into(r.hi_.get(), t.get());
        continue;
      }
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      min_into(r.lo_.get(), t.get());
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      max_into(r.hi_.get(), t.get());
    }
  }
  r.sanitize();
  return r;
}

Interval scale(const Interval& a, const Rational& c) {
  return a * Interval::point(c, a.prec());
}

Interval pow_nat(const Interval& a, unsigned n) {
  Interval r(a.prec());
  if (n == 0) {
    mpfr_set_ui(r.lo_.get(), 1, MPFR_RNDD);
    mpfr_set_ui(r.hi_.get(), 1, MPFR_RNDU);
    return r;
  }
  if (n % 2 == 1 || a.nonnegative()) {
    mpfr_pow_ui(r.lo_.get(), a.lo_.get(), n, MPFR_RNDD);
    mpfr_pow_ui(r.hi_.get(), a.hi_.get(), n, MPFR_RNDU);
  } else if (a.nonpositive()) {
    mpfr_pow_ui(r.lo_.get(), a.hi_.get(), n, MPFR_RNDD);
    mpfr_pow_ui(r.hi_.get(), a.lo_.get(), n, MPFR_RNDU);
  } else {
    Mpfr m(a.prec());
    mpfr_neg(m.get(), a.lo_.get(), MPFR_RNDU);
    if (mpfr_less_p(m.get(), a.hi_.get())) mpfr_set(m.get(), a.hi_.get(), MPFR_RNDU);
    mpfr_set_zero(r.lo_.get(), 1);
    mpfr_pow_ui(r.hi_.get(), m.get(), n, MPFR_RNDU);
  }
  r.sanitize();
  return r;
}

Interval Interval::increasing(const Interval& a,
                              int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) {
  Interval r(a.prec());
  fn(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
  fn(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
  r.sanitize();
  return r;
}

Interval exp(const Interval& a) { return Interval::increasing(a, mpfr_exp); }
Interval atan(const Interval& a) { return Interval::increasing(a, mpfr_atan); }
Interval tanh(const Interval& a) { return Interval::increasing(a, mpfr_tanh); }

Interval sin(const Interval& a) {
  Interval r(a.prec());
  mpfr_set_si(r.lo_.get(), -1, MPFR_RNDD);
  mpfr_set_si(r.hi_.get(), 1, MPFR_RNDU);
  if (!a.is_bounded()) return r;
  bool has_max = may_contain_phase(a.lo_.get(), a.hi_.get(), 0.5);
  bool has_min = may_contain_phase(a.lo_.get(), a.hi_.get(), 1.5);
  if (has_max && has_min) return r;
  Mpfr t(a.prec());
  Interval e(a.prec());
  mpfr_sin(e.lo_.get(), a.lo_.get(), MPFR_RNDD);
  mpfr_sin(t.get(), a.hi_.get(), MPFR_RNDD);
  min_into(e.lo_.get(), t.get());
  mpfr_sin(e.hi_.get(), a.lo_.get(), MPFR_RNDU);
  mpfr_sin(t.get(), a.hi_.get(), MPFR_RNDU);
  max_into(e.hi_.get(), t.get());
  if (!has_max) mpfr_set(r.hi_.get(), e.hi_.get(), MPFR_RNDU);
  if (!has_min) mpfr_set(r.lo_.get(), e.lo_.get(), MPFR_RNDD);
  return r;
}

Interval cos(const Interval& a) {
  Interval r(a.prec());
  mpfr_set_si(r.lo_.get(), -1, MPFR_RNDD);
  mpfr_set_si(r.hi_.get(), 1, MPFR_RNDU);
  if (!a.is_bounded()) return r;
  bool has_max = may_contain_phase(a.lo_.get(), a.hi_.get(), 0.0);
  bool has_min = may_contain_phase(a.lo_.get(), a.hi_.get(), 1.0);
  if (has_max && has_min) return r;
  Mpfr t(a.prec());
  Interval e(a.prec());
  mpfr_cos(e.lo_.get(), a.lo_.get(), MPFR_RNDD);
  mpfr_cos(t.get(), a.hi_.get(), MPFR_RNDD);
  min_into(e.lo_.get(), t.get());
  mpfr_cos(e.hi_.get(), a.lo_.get(), MPFR_RNDU);
  mpfr_cos(t.get(), a.hi_.get(), MPFR_RNDU);
  max_into(e.hi_.get(), t.get());
  if (!has_max) mpfr_set(r.hi_.get(), e.hi_.get(), MPFR_RNDU);
  if (!has_min) mpfr_set(r.lo_.get(), e.lo_.get(), MPFR_RNDD);
  return r;
}

Interval sqrt_pos(const Interval& a) {
  Interval r(a.prec());
  if (mpfr_sgn(a.lo_.get()) > 0)
    mpfr_sqrt(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
  else
    mpfr_set_zero(r.lo_.get(), 1);
  if (mpfr_sgn(a.hi_.get()) > 0)
    mpfr_sqrt(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
  else
    mpfr_set_zero(r.hi_.get(), 1);
  r.sanitize();
  return r;
}

Interval inv_pos(const Interval& a) {
  Interval r(a.prec());
  if (mpfr_sgn(a.hi_.get()) > 0)
    mpfr_ui_div(r.lo_.get(), 1, a.hi_.get(), MPFR_RNDD);
  else
    mpfr_set_zero(r.lo_.get(), 1);
  if (mpfr_sgn(a.lo_.get()) > 0)
    mpfr_ui_div(r.hi_.get(), 1, a.lo_.get(), MPFR_RNDU);
  else
    mpfr_set_inf(r.hi_.get(), 1);
  r.sanitize();
  return r;
}

Interval hull(const Interval& a, const Interval& b) {
  Interval r(join(a, b));
  mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::bump_factor(const Rational& qlo, const Rational& qhi, mpfr_prec_t prec) {
  Interval r(prec);
  if (qhi <= 0) return r;  // [0, 0]
  Mpfr t(prec);
  // upper: exp(-1/qhi) rounded up; -1/qhi rounded up means 1/qhi rounded down.
  mpfr_set_q(t.get(), qhi.get_mpq_t(), MPFR_RNDU);
  mpfr_ui_div(t.get(), 1, t.get(), MPFR_RNDD);
  mpfr_neg(t.get(), t.get(), MPFR_RNDU);
  mpfr_exp(r.hi_.get(), t.get(), MPFR_RNDU);
  if (qlo > 0) {
    mpfr_set_q(t.get(), qlo.get_mpq_t(), MPFR_RNDD);
    mpfr_ui_div(t.get(), 1, t.get(), MPFR_RNDU);
    mpfr_neg(t.get(), t.get(), MPFR_RNDD);
    mpfr_exp(r.lo_.get(), t.get(), MPFR_RNDD);
  }
  return r;
}

}  // namespace cinf
