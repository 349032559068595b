#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cinf/rational.hpp"

namespace cinf {

enum class Kind : std::uint8_t {
  Var,
  Const,
  Add,
  Sub,
  Mul,
  Neg,
  PowNat,
  Exp,
  Sin,
  Cos,
  Atan,
  Tanh,
  PSqrt,
  PInv,
  BoxBump,
};

const char* kind_name(Kind k);

using ObligationId = std::uint64_t;

/// One coordinate of the open box of a BoxBump: lo < var < hi.
struct BumpAxis {
  std::string var;
  Rational lo;
  Rational hi;
};

class Term;

struct Node {
  Kind kind;
  std::vector<Term> children;
  std::string name;              // Var
  Rational value;                // Const
  unsigned exponent = 0;         // PowNat
  ObligationId obligation = 0;   // PSqrt, PInv
  std::vector<BumpAxis> axes;    // BoxBump, sorted by variable name
  std::size_t hash = 0;
  std::size_t size = 1;
};

/// Immutable expression tree denoting a total smooth function R^E -> R with
/// finite support. Shared structure; cheap to copy.
class Term {
 public:
  Term();  // Const(0)
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  Kind kind() const { return node_->kind; }
  const Node& node() const { return *node_; }
  const std::vector<Term>& children() const { return node_->children; }
  const Term& child(std::size_t i) const { return node_->children.at(i); }
  const std::string& name() const { return node_->name; }
  const Rational& value() const { return node_->value; }
  unsigned exponent() const { return node_->exponent; }
  ObligationId obligation() const { return node_->obligation; }
  const std::vector<BumpAxis>& axes() const { return node_->axes; }
  std::size_t hash() const { return node_->hash; }
  std::size_t size() const { return node_->size; }
  const Node* id() const { return node_.get(); }

  bool is_const() const { return kind() == Kind::Const; }
  bool is_zero() const { return is_const() && value() == 0; }
  bool is_one() const { return is_const() && value() == 1; }

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }

 private:
  std::shared_ptr<const Node> node_;
};

/// Structural total order; deterministic across runs.
int compare(const Term& a, const Term& b);
struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return compare(a, b) < 0; }
};
struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Builders. psqrt/pinv register a positivity obligation on their argument.
Term var(const std::string& name);
Term constant(const Rational& q);
Term constant(long n);
Term add(std::vector<Term> terms);
Term add(const Term& a, const Term& b);
Term sub(const Term& a, const Term& b);
Term mul(std::vector<Term> terms);
Term mul(const Term& a, const Term& b);
Term neg(const Term& a);
Term pow(const Term& a, unsigned n);
Term exp(const Term& a);
Term sin(const Term& a);
Term cos(const Term& a);
Term atan(const Term& a);
Term tanh(const Term& a);
Term psqrt(const Term& a);
Term pinv(const Term& a);
Term bump(std::vector<BumpAxis> axes);
/// Unary function node by kind (Exp, Sin, Cos, Atan, Tanh, PSqrt, PInv, Neg).
Term unary(Kind k, const Term& a);
/// Same node kind and payload with new children.
Term rebuild(const Term& t, std::vector<Term> children);

inline Term operator+(const Term& a, const Term& b) { return add(a, b); }
inline Term operator-(const Term& a, const Term& b) { return sub(a, b); }
inline Term operator*(const Term& a, const Term& b) { return mul(a, b); }
inline Term operator-(const Term& a) { return neg(a); }

std::set<std::string> support(const Term& t);
bool is_unary_function(Kind k);

/// S-expression form, e.g. (exp (+ x y)). Canonical serialization.
std::string to_sexpr(const Term& t);
/// Infix form, e.g. exp(x + y) - 1. Fully parenthesized where nesting matters.
std::string to_infix(const Term& t);

}  // namespace cinf

template <>
struct std::hash<cinf::Term> {
  std::size_t operator()(const cinf::Term& t) const { return t.hash(); }
};
