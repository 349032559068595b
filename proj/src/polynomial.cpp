#include "cinf/polynomial.hpp"

#include <algorithm>
#include <unordered_map>

#include "cinf/errors.hpp"

namespace cinf {

namespace {

// Powers of multi-term sums above this exponent stay unexpanded atoms.
constexpr unsigned kExpandLimit = 8;

}  // namespace

unsigned degree(const Monomial& m) {
  unsigned d = 0;
  for (const auto& [_, e] : m) d += e;
  return d;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && compare(a[i].first, b[j].first) < 0)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || compare(b[j].first, a[i].first) < 0) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

std::optional<Monomial> divide(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t i = 0;
  for (const auto& [atom, e] : b) {
    while (i < a.size() && compare(a[i].first, atom) < 0) out.push_back(a[i++]);
    if (i == a.size() || compare(a[i].first, atom) != 0 || a[i].second < e) return std::nullopt;
    if (a[i].second > e) out.emplace_back(atom, a[i].second - e);
    ++i;
  }
  while (i < a.size()) out.push_back(a[i++]);
  return out;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = degree(a), db = degree(b);
  if (da != db) return da > db;
  std::size_t i = 0;
  for (; i < a.size() && i < b.size(); ++i) {
    int c = compare(a[i].first, b[i].first);
    if (c != 0) return c < 0;  // a carries the more significant atom
    if (a[i].second != b[i].second) return a[i].second > b[i].second;
  }
  return i < a.size() && i == b.size();
}

Poly Poly::constant(const Rational& c) {
  Poly p;
  p.add_term({}, c);
  return p;
}

Poly Poly::atom(const Term& a) {
  Poly p;
  p.add_term({{a, 1}}, 1);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Poly::constant_value() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Poly::total_degree() const {
  return terms_.empty() ? 0 : degree(terms_.begin()->first);
}

Monomial Poly::common_factor() const {
  if (terms_.empty()) return {};
  Monomial g = terms_.begin()->first;
  for (const auto& [m, _] : terms_) {
    Monomial next;
    std::size_t i = 0, j = 0;
    while (i < g.size() && j < m.size()) {
      int c = compare(g[i].first, m[j].first);
      if (c < 0) ++i;
      else if (c > 0) ++j;
      else {
        next.emplace_back(g[i].first, std::min(g[i].second, m[j].second));
        ++i;
        ++j;
      }
    }
    g = std::move(next);
    if (g.empty()) break;
  }
  return g;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) r.add_term(multiply(m1, m2), c1 * c2);
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  if (c == 0) return {};
  Poly r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
  return r;
}

Poly Poly::times(const Monomial& mono, const Rational& c) const {
  Poly r;
  if (c == 0) return r;
  for (const auto& [m, k] : terms_) r.add_term(multiply(m, mono), k * c);
  return r;
}

Poly Poly::pow(unsigned n) const {
  Poly result = constant(1);
  Poly base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n) base = base * base;
  }
  return result;
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  for (; a != terms_.end(); ++a, ++b) {
    if (a->second != b->second) return false;
    if (a->first.size() != b->first.size()) return false;
    for (std::size_t i = 0; i < a->first.size(); ++i)
      if (a->first[i].second != b->first[i].second || a->first[i].first != b->first[i].first)
        return false;
  }
  return true;
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) return std::nullopt;
  const auto& [lm_b, lc_b] = *b.terms().begin();
  Poly rem = a;
  Poly quotient;
  std::size_t guard = 0;
  while (!rem.is_zero()) {
    if (++guard > 100000) return std::nullopt;
    const auto& [lm, lc] = *rem.terms().begin();
    auto q = divide(lm, lm_b);
    if (!q) return std::nullopt;
    Rational c = lc / lc_b;
    quotient.add_term(*q, c);
    rem = rem - b.times(*q, c);
  }
  return quotient;
}

namespace {

Term normal_child(const Term& t) { return from_poly(to_poly(t)); }

// psqrt atoms: s^e -> s^(e mod 2) * radicand^(e / 2).
Poly reduce_square_roots(Poly p) {
  for (int round = 0; round < 64; ++round) {
    bool changed = false;
    Poly out;
    for (const auto& [m, c] : p.terms()) {
      Monomial rest;
      std::vector<std::pair<Term, unsigned>> lifted;
      for (const auto& [atom, e] : m) {
        if (atom.kind() == Kind::PSqrt && e >= 2) {
          lifted.emplace_back(atom.child(0), e / 2);
          if (e % 2) rest.emplace_back(atom, 1);
        } else {
          rest.emplace_back(atom, e);
        }
      }
      if (lifted.empty()) {
        out.add_term(m, c);
        continue;
      }
      changed = true;
      Poly piece = Poly::constant(c);
      piece = piece.times(rest, 1);
      for (const auto& [radicand, k] : lifted) piece = piece * to_poly(radicand).pow(k);
      out = out + piece;
    }
    p = std::move(out);
    if (!changed) break;
  }
  return p;
}

Poly fold_unary(Kind k, const Term& child) {
  if (child.is_const()) {
    const Rational& v = child.value();
    switch (k) {
      case Kind::Exp:
        if (v == 0) return Poly::constant(1);
        break;
      case Kind::Cos:
        if (v == 0) return Poly::constant(1);
        break;
      case Kind::Sin:
      case Kind::Atan:
      case Kind::Tanh:
        if (v == 0) return Poly::constant(0);
        break;
      case Kind::PSqrt:
        if (v > 0)
          if (auto r = exact_sqrt(v)) return Poly::constant(*r);
        break;
      case Kind::PInv:
        if (v > 0) return Poly::constant(Rational(1) / v);
        break;
      default: break;
    }
  }
  return Poly::atom(unary(k, child));
}

}  // namespace

Poly to_poly(const Term& t) {
  switch (t.kind()) {
    case Kind::Var:
    case Kind::BoxBump: return Poly::atom(t);
    case Kind::Const: return Poly::constant(t.value());
    case Kind::Add: {
      Poly p;
      for (const auto& c : t.children()) p = p + to_poly(c);
      return p;
    }
    case Kind::Sub: return to_poly(t.child(0)) - to_poly(t.child(1));
    case Kind::Neg: return -to_poly(t.child(0));
    case Kind::Mul: {
      Poly p = Poly::constant(1);
      for (const auto& c : t.children()) {
        p = p * to_poly(c);
        if (p.is_zero()) break;
      }
      return reduce_square_roots(std::move(p));
    }
    case Kind::PowNat: {
      Poly base = to_poly(t.child(0));
      if (base.size() > 1 && t.exponent() > kExpandLimit)
        return Poly::atom(pow(from_poly(base), t.exponent()));
      return reduce_square_roots(base.pow(t.exponent()));
    }
    default: return fold_unary(t.kind(), normal_child(t.child(0)));
  }
}

Term from_poly(const Poly& p) {
  if (p.is_zero()) return constant(0);
  std::vector<Term> summands;
  summands.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    std::vector<Term> factors;
    for (const auto& [atom, e] : m) factors.push_back(e == 1 ? atom : pow(atom, e));
    if (factors.empty()) {
      summands.push_back(constant(c));
    } else if (c == 1) {
      summands.push_back(mul(std::move(factors)));
    } else if (c == -1) {
      summands.push_back(neg(mul(std::move(factors))));
    } else {
      factors.insert(factors.begin(), constant(c));
      summands.push_back(mul(std::move(factors)));
    }
  }
  return add(std::move(summands));
}

namespace {

RationalFunction rf_add(const RationalFunction& a, const RationalFunction& b, bool subtract) {
  Poly nb = subtract ? -b.num : b.num;
  if (a.den == b.den) return {a.num + nb, a.den};
  return {a.num * b.den + nb * a.den, a.den * b.den};
}

RationalFunction rf_mul(const RationalFunction& a, const RationalFunction& b) {
  return {a.num * b.num, a.den * b.den};
}

void rf_tidy(RationalFunction& r) {
  if (r.den.is_constant() && !r.den.is_zero()) {
    r.num = r.num.scaled(Rational(1) / r.den.constant_value());
    r.den = Poly::constant(1);
  }
}

}  // namespace

RationalFunction to_rational_function(const Term& t) {
  RationalFunction r;
  switch (t.kind()) {
    case Kind::Add: {
      r = {Poly(), Poly::constant(1)};
      for (const auto& c : t.children()) r = rf_add(r, to_rational_function(c), false);
      break;
    }
    case Kind::Sub:
      r = rf_add(to_rational_function(t.child(0)), to_rational_function(t.child(1)), true);
      break;
    case Kind::Neg:
      r = to_rational_function(t.child(0));
      r.num = -r.num;
      break;
    case Kind::Mul: {
      r = {Poly::constant(1), Poly::constant(1)};
      for (const auto& c : t.children()) r = rf_mul(r, to_rational_function(c));
      break;
    }
    case Kind::PowNat: {
      auto b = to_rational_function(t.child(0));
      r = {b.num.pow(t.exponent()), b.den.pow(t.exponent())};
      break;
    }
    case Kind::PInv: {
      auto b = to_rational_function(t.child(0));
      if (b.num.is_zero()) {
        r = {to_poly(t), Poly::constant(1)};
      } else {
        r = {b.den, b.num};
      }
      break;
    }
    default: r = {to_poly(t), Poly::constant(1)}; break;
  }
  rf_tidy(r);
  return r;
}

bool skeleton_is_zero(const Term& t) {
  RationalFunction r = to_rational_function(t);
  Poly num = r.num;
  for (int round = 0; round < 256 && !num.is_zero(); ++round) {
    // Outermost psqrt atom with a power >= 2; its radicand only holds smaller atoms.
    std::optional<Term> target;
    for (const auto& [m, _] : num.terms())
      for (const auto& [atom, e] : m)
        if (atom.kind() == Kind::PSqrt && e >= 2 &&
            (!target || atom.size() > target->size() ||
             (atom.size() == target->size() && compare(atom, *target) < 0)))
          target = atom;
    if (!target) break;
    Term s = *target;
    unsigned max_half = 0;
    for (const auto& [m, _] : num.terms())
      for (const auto& [atom, e] : m)
        if (atom == s) max_half = std::max(max_half, e / 2);
    RationalFunction radicand = to_rational_function(s.child(0));
    Poly next;
    for (const auto& [m, c] : num.terms()) {
      Monomial rest;
      unsigned e = 0;
      for (const auto& [atom, k] : m) {
        if (atom == s) e = k;
        else rest.emplace_back(atom, k);
      }
      if (e % 2) {
        rest.emplace_back(s, 1);
        std::sort(rest.begin(), rest.end(),
                  [](const auto& x, const auto& y) { return compare(x.first, y.first) < 0; });
      }
      Poly piece = Poly::constant(c).times(rest, 1);
      piece = piece * radicand.num.pow(e / 2) * radicand.den.pow(max_half - e / 2);
      next = next + piece;
    }
    num = std::move(next);
  }
  return num.is_zero();
}

std::optional<std::pair<std::string, Rational>> affine_root(const Term& t) {
  Poly p = to_poly(t);
  if (p.total_degree() != 1) return std::nullopt;
  std::optional<std::pair<std::string, Rational>> out;
  Rational slope = 0;
  for (const auto& [m, c] : p.terms()) {
    if (m.empty()) continue;
    if (m.size() != 1 || m[0].second != 1 || m[0].first.kind() != Kind::Var || out)
      return std::nullopt;
    out = std::make_pair(m[0].first.name(), Rational(0));
    slope = c;
  }
  if (!out) return std::nullopt;
  out->second = -p.constant_value() / slope;
  out->second.canonicalize();
  return out;
}

bool positive_multiple(const Term& a, const Term& b) {
  Poly pa = to_poly(a);
  Poly pb = to_poly(b);
  if (pa.is_zero() || pb.is_zero()) return false;
  const auto& [ma, ca] = *pa.terms().begin();
  const auto& [mb, cb] = *pb.terms().begin();
  if (!(ma.size() == mb.size())) return false;
  Rational ratio = ca / cb;
  if (ratio <= 0) return false;
  return pa == pb.scaled(ratio);
}

}  // namespace cinf
