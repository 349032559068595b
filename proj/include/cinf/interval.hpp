#pragma once

#include <mpfr.h>

#include <string>

#include "cinf/rational.hpp"

namespace cinf {

/// Owning wrapper around an mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Mpfr(const Mpfr& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Mpfr(Mpfr&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
  Mpfr& operator=(const Mpfr& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Mpfr& operator=(Mpfr&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Mpfr() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

 private:
  mpfr_t v_;
};

/// Closed interval [lo, hi] with MPFR endpoints and outward rounding.
/// Endpoints may be infinite; an interval never contains NaN.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 53);

  static Interval point(const Rational& q, mpfr_prec_t prec);
  static Interval of(const Rational& lo, const Rational& hi, mpfr_prec_t prec);
  static Interval entire(mpfr_prec_t prec);

  mpfr_prec_t prec() const { return lo_.prec(); }
  mpfr_srcptr lo() const { return lo_.get(); }
  mpfr_srcptr hi() const { return hi_.get(); }

  bool contains_zero() const;
  bool positive() const;      // lo > 0
  bool negative() const;      // hi < 0
  bool nonnegative() const;   // lo >= 0
  bool nonpositive() const;   // hi <= 0
  bool excludes_zero() const { return positive() || negative(); }
  bool contains(double x) const;
  bool intersects(const Interval& o) const;
  bool is_bounded() const;

  double lower_d() const;     // rounded down
  double upper_d() const;     // rounded up
  double mid_d() const;
  double width_d() const;     // rounded up
  double magnitude_d() const; // upper bound on |x|

  std::string str(int digits = 17) const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a);

  friend Interval scale(const Interval& a, const Rational& c);
  friend Interval pow_nat(const Interval& a, unsigned n);
  friend Interval exp(const Interval& a);
  friend Interval sin(const Interval& a);
  friend Interval cos(const Interval& a);
  friend Interval atan(const Interval& a);
  friend Interval tanh(const Interval& a);
  /// Square root of the nonnegative part; callers guard positivity.
  friend Interval sqrt_pos(const Interval& a);
  /// Reciprocal assuming the true argument is positive; a nonpositive lower
  /// endpoint yields an upper bound of +inf.
  friend Interval inv_pos(const Interval& a);
  friend Interval hull(const Interval& a, const Interval& b);

  /// exp(-1/q) for q ranging over [qlo, qhi] with 0 <= qlo; zero when qlo == qhi == 0.
  static Interval bump_factor(const Rational& qlo, const Rational& qhi, mpfr_prec_t prec);

 private:
  Mpfr lo_;
  Mpfr hi_;
  void sanitize();
  static Interval increasing(const Interval& a, int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t));
};

}  // namespace cinf
