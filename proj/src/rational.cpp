#include "cinf/rational.hpp"

#include <cctype>

namespace cinf {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rational pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Rational(p);
  Rational r(mpz_class(1), p);
  r.canonicalize();
  return r;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class d{std::string(den)};
    if (d == 0) return std::nullopt;
    value = Rational(mpz_class(std::string(num)), d);
    value.canonicalize();
  } else {
    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = text.substr(0, e);
      auto exp_text = text.substr(e + 1);
      bool exp_neg = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_neg = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6) return std::nullopt;
      exponent = std::stol(std::string(exp_text));
      if (exp_neg) exponent = -exponent;
    }
    std::string digits;
    long frac_digits = 0;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      auto ip = mantissa.substr(0, dot);
      auto fp = mantissa.substr(dot + 1);
      if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) ||
          (ip.empty() && fp.empty()))
        return std::nullopt;
      digits = std::string(ip) + std::string(fp);
      frac_digits = static_cast<long>(fp.size());
    } else {
      if (!all_digits(mantissa)) return std::nullopt;
      digits = std::string(mantissa);
    }
    value = Rational(mpz_class(digits)) * pow10(exponent - frac_digits);
    value.canonicalize();
  }
  if (negative) value = -value;
  return value;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_dyadic(const Rational& q) {
  mpz_class d = q.get_den();
  return mpz_popcount(d.get_mpz_t()) == 1;
}

double to_double(const Rational& q) { return q.get_d(); }

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num().get_mpz_t()) ||
      !mpz_perfect_square_p(q.get_den().get_mpz_t()))
    return std::nullopt;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num().get_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den().get_mpz_t());
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Rational midpoint(const Rational& a, const Rational& b) {
  Rational m = (a + b) / 2;
  m.canonicalize();
  return m;
}

}  // namespace cinf
