#include "cinf/smooth_ring.hpp"

#include "cinf/errors.hpp"
#include "cinf/polynomial.hpp"
#include "cinf/serialize.hpp"
#include "cinf/term_calculus.hpp"

namespace cinf {

bool FreeRing::owns(const Term& t) const {
  for (const auto& v : cinf::support(t))
    if (!vars_.count(v)) return false;
  return true;
}

std::string FreeRing::fresh(const std::string& prefix, const std::set<std::string>& avoid) const {
  for (std::size_t i = 1;; ++i) {
    std::string name = prefix + std::to_string(i);
    if (!vars_.count(name) && !avoid.count(name)) return name;
  }
}

Ideal::Ideal(std::vector<Term> generators) : gens_(std::move(generators)) {
  std::vector<Term> squares;
  for (const auto& g : gens_) {
    normal_.push_back(normalize(g));
    squares.push_back(pow(g, 2));
  }
  structured_ = add(std::move(squares));
  sigma_ = normalize(structured_);
}

std::set<std::string> Ideal::support() const {
  std::set<std::string> out;
  for (const auto& g : gens_)
    for (const auto& v : cinf::support(g)) out.insert(v);
  return out;
}

namespace {

bool member(const Ideal& I, const std::vector<Term>& normal, const Term& t, int depth) {
  if (depth > 32) return false;
  Term n = normalize(t);
  if (n.is_zero()) return true;
  if (n == I.sigma()) return true;
  Poly p = to_poly(n);
  for (const auto& g : normal) {
    if (n == g) return true;
    if (divide_exact(p, to_poly(g))) return true;
  }
  switch (t.kind()) {
    case Kind::Add:
    case Kind::Sub:
      for (const auto& c : t.children())
        if (!member(I, normal, c, depth + 1)) return false;
      return true;
    case Kind::Mul:
      for (const auto& c : t.children())
        if (member(I, normal, c, depth + 1)) return true;
      return false;
    case Kind::PowNat: return t.exponent() > 0 && member(I, normal, t.child(0), depth + 1);
    case Kind::Neg: return member(I, normal, t.child(0), depth + 1);
    default: return false;
  }
}

}  // namespace

bool Ideal::contains_syntactically(const Term& t) const { return member(*this, normal_, t, 0); }

std::string Ideal::str() const {
  std::string s = "<";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) s += ", ";
    s += to_infix(gens_[i]);
  }
  return s + ">";
}

bool Ideal::operator==(const Ideal& o) const { return normal_ == o.normal_; }

Term sigma(const Ideal& I) { return I.sigma(); }

Ideal pullback_ideal(const Ideal& I, const std::set<std::string>& vars) {
  std::vector<Term> kept;
  for (const auto& g : I.generators()) {
    bool inside = true;
    for (const auto& v : support(g)) inside = inside && vars.count(v) > 0;
    if (inside) kept.push_back(g);
  }
  return Ideal(std::move(kept));
}

Coset::Coset(Term rep, Ideal ideal) : rep_(normalize(rep)), ideal_(std::move(ideal)) {}

void Coset::require_same(const Coset& o) const {
  if (ideal_ != o.ideal_)
    throw Error(ErrorCode::IdealMismatch,
                "cosets of " + ideal_.str() + " and " + o.ideal_.str() + " cannot be combined");
}

Coset Coset::operator+(const Coset& o) const {
  require_same(o);
  return Coset(add(rep_, o.rep_), ideal_);
}

Coset Coset::operator-(const Coset& o) const {
  require_same(o);
  return Coset(sub(rep_, o.rep_), ideal_);
}

Coset Coset::operator*(const Coset& o) const {
  require_same(o);
  return Coset(mul(rep_, o.rep_), ideal_);
}

Coset Coset::operator-() const { return Coset(neg(rep_), ideal_); }

nlohmann::json to_json(const Presentation& p) {
  json gens = json::array();
  for (const auto& g : p.ideal.generators()) gens.push_back(term_to_json(g));
  return {{"v", kSchemaVersion}, {"variables", p.variables}, {"generators", gens}};
}

Presentation presentation_from_json(const nlohmann::json& j) {
  check_version(j);
  Presentation p;
  if (!j.contains("variables") || !j["variables"].is_array())
    throw Error(ErrorCode::Malformed, "presentation needs a \"variables\" array");
  for (const auto& v : j["variables"]) {
    if (!v.is_string()) throw Error(ErrorCode::Malformed, "variable names are strings");
    p.variables.push_back(v.get<std::string>());
  }
  std::vector<Term> gens;
  if (j.contains("generators")) {
    if (!j["generators"].is_array())
      throw Error(ErrorCode::Malformed, "\"generators\" must be an array");
    for (const auto& g : j["generators"]) gens.push_back(term_from_json(g));
  }
  std::set<std::string> declared(p.variables.begin(), p.variables.end());
  for (const auto& g : gens)
    for (const auto& v : support(g))
      if (!declared.count(v))
        throw Error(ErrorCode::Malformed, "generator uses undeclared variable " + v);
  p.ideal = Ideal(std::move(gens));
  return p;
}

}  // namespace cinf
