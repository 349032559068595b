#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cinf/rational.hpp"
#include "cinf/term.hpp"

namespace cinf {

/// Product of atoms with positive exponents, sorted by atom.
/// Atoms are normalized non-arithmetic terms: variables, unary primitives,
/// bumps, and high powers of sums kept unexpanded.
using Monomial = std::vector<std::pair<Term, unsigned>>;

unsigned degree(const Monomial& m);
Monomial multiply(const Monomial& a, const Monomial& b);
std::optional<Monomial> divide(const Monomial& a, const Monomial& b);

/// Graded order, larger monomials first. A monomial order, so leading terms
/// multiply.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Polynomial over atoms with rational coefficients; the normal form behind
/// term normalization.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational, MonomialOrder>;

  Poly() = default;
  static Poly constant(const Rational& c);
  static Poly atom(const Term& a);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;
  unsigned total_degree() const;
  std::size_t size() const { return terms_.size(); }

  /// Monomial-wise gcd (common atom powers) of all terms.
  Monomial common_factor() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(const Rational& c) const;
  Poly times(const Monomial& m, const Rational& c) const;
  Poly pow(unsigned n) const;
  bool operator==(const Poly& o) const;

  void add_term(const Monomial& m, const Rational& c);

 private:
  Terms terms_;
};

/// Exact quotient a / b when b divides a, else nullopt.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

/// Polynomial normal form of a term (atoms normalized recursively).
Poly to_poly(const Term& t);
/// Canonical term for a polynomial.
Term from_poly(const Poly& p);

/// Numerator/denominator over atoms where pinv(X) is read as 1/X and
/// psqrt(X) as an atom s with s^2 = X.
struct RationalFunction {
  Poly num;
  Poly den;
};

RationalFunction to_rational_function(const Term& t);

/// True when t reduces to 0 as a rational function with s^2 = X relations for
/// every psqrt atom. Sound: a true answer means t vanishes identically
/// wherever its obligations hold.
bool skeleton_is_zero(const Term& t);

/// When t normalizes to c*v + d (single variable v, c != 0), returns (v, -d/c).
std::optional<std::pair<std::string, Rational>> affine_root(const Term& t);

/// True when a == c*b for some rational c > 0 (after normalization).
bool positive_multiple(const Term& a, const Term& b);

}  // namespace cinf
