#include "cinf/term.hpp"

#include <algorithm>
#include <sstream>

#include "cinf/errors.hpp"
#include "cinf/obligation.hpp"

namespace cinf {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Term make(Node n) {
  std::size_t h = static_cast<std::size_t>(n.kind) * 0x100000001b3ULL;
  std::size_t size = 1;
  switch (n.kind) {
    case Kind::Var: h = mix(h, std::hash<std::string>{}(n.name)); break;
    case Kind::Const: h = mix(h, std::hash<std::string>{}(to_string(n.value))); break;
    case Kind::PowNat: h = mix(h, n.exponent); break;
    case Kind::BoxBump:
      for (const auto& a : n.axes) {
        h = mix(h, std::hash<std::string>{}(a.var));
        h = mix(h, std::hash<std::string>{}(to_string(a.lo)));
        h = mix(h, std::hash<std::string>{}(to_string(a.hi)));
      }
      break;
    default: break;
  }
  for (const auto& c : n.children) {
    h = mix(h, c.hash());
    size += c.size();
  }
  n.hash = h;
  n.size = size;
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term node_with(Kind k, std::vector<Term> children) {
  Node n;
  n.kind = k;
  n.children = std::move(children);
  return make(std::move(n));
}

int cmp_rational(const Rational& a, const Rational& b) { return a < b ? -1 : (b < a ? 1 : 0); }

}  // namespace

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Var: return "var";
    case Kind::Const: return "const";
    case Kind::Add: return "+";
    case Kind::Sub: return "-";
    case Kind::Mul: return "*";
    case Kind::Neg: return "neg";
    case Kind::PowNat: return "^";
    case Kind::Exp: return "exp";
    case Kind::Sin: return "sin";
    case Kind::Cos: return "cos";
    case Kind::Atan: return "atan";
    case Kind::Tanh: return "tanh";
    case Kind::PSqrt: return "psqrt";
    case Kind::PInv: return "pinv";
    case Kind::BoxBump: return "bump";
  }
  return "?";
}

bool is_unary_function(Kind k) {
  switch (k) {
    case Kind::Exp:
    case Kind::Sin:
    case Kind::Cos:
    case Kind::Atan:
    case Kind::Tanh:
    case Kind::PSqrt:
    case Kind::PInv: return true;
    default: return false;
  }
}

Term::Term() : Term(constant(0)) {}

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  if (hash() != o.hash()) return false;
  return compare(*this, o) == 0;
}

int compare(const Term& a, const Term& b) {
  if (a.id() == b.id()) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Kind::Var:
      if (a.name() != b.name()) return a.name() < b.name() ? -1 : 1;
      return 0;
    case Kind::Const: return cmp_rational(a.value(), b.value());
    case Kind::PowNat:
      if (a.exponent() != b.exponent()) return a.exponent() < b.exponent() ? -1 : 1;
      break;
    case Kind::BoxBump: {
      const auto& x = a.axes();
      const auto& y = b.axes();
      if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].var != y[i].var) return x[i].var < y[i].var ? -1 : 1;
        if (int c = cmp_rational(x[i].lo, y[i].lo)) return c;
        if (int c = cmp_rational(x[i].hi, y[i].hi)) return c;
      }
      return 0;
    }
    default: break;
  }
  const auto& ca = a.children();
  const auto& cb = b.children();
  std::size_t n = std::min(ca.size(), cb.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = compare(ca[i], cb[i])) return c;
  if (ca.size() != cb.size()) return ca.size() < cb.size() ? -1 : 1;
  return 0;
}

Term var(const std::string& name) {
  if (name.empty()) throw Error(ErrorCode::Malformed, "empty variable name");
  Node n;
  n.kind = Kind::Var;
  n.name = name;
  return make(std::move(n));
}

Term constant(const Rational& q) {
  Node n;
  n.kind = Kind::Const;
  n.value = q;
  n.value.canonicalize();
  return make(std::move(n));
}

Term constant(long v) { return constant(Rational(v)); }

Term add(std::vector<Term> terms) {
  if (terms.empty()) return constant(0);
  if (terms.size() == 1) return terms.front();
  return node_with(Kind::Add, std::move(terms));
}
Term add(const Term& a, const Term& b) { return node_with(Kind::Add, {a, b}); }
Term sub(const Term& a, const Term& b) { return node_with(Kind::Sub, {a, b}); }

Term mul(std::vector<Term> terms) {
  if (terms.empty()) return constant(1);
  if (terms.size() == 1) return terms.front();
  return node_with(Kind::Mul, std::move(terms));
}
Term mul(const Term& a, const Term& b) { return node_with(Kind::Mul, {a, b}); }
Term neg(const Term& a) { return node_with(Kind::Neg, {a}); }

Term pow(const Term& a, unsigned n) {
  Node node;
  node.kind = Kind::PowNat;
  node.exponent = n;
  node.children = {a};
  return make(std::move(node));
}

Term exp(const Term& a) { return node_with(Kind::Exp, {a}); }
Term sin(const Term& a) { return node_with(Kind::Sin, {a}); }
Term cos(const Term& a) { return node_with(Kind::Cos, {a}); }
Term atan(const Term& a) { return node_with(Kind::Atan, {a}); }
Term tanh(const Term& a) { return node_with(Kind::Tanh, {a}); }

namespace {
Term guarded(Kind k, const Term& a) {
  Node n;
  n.kind = k;
  n.children = {a};
  n.obligation = ObligationRegistry::global().obtain(a);
  return make(std::move(n));
}
}  // namespace

Term psqrt(const Term& a) { return guarded(Kind::PSqrt, a); }
Term pinv(const Term& a) { return guarded(Kind::PInv, a); }

Term bump(std::vector<BumpAxis> axes) {
  if (axes.empty()) throw Error(ErrorCode::Malformed, "bump needs at least one axis");
  std::sort(axes.begin(), axes.end(),
            [](const BumpAxis& x, const BumpAxis& y) { return x.var < y.var; });
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (!(axes[i].lo < axes[i].hi))
      throw Error(ErrorCode::Malformed, "bump axis " + axes[i].var + " needs lo < hi");
    if (i > 0 && axes[i].var == axes[i - 1].var)
      throw Error(ErrorCode::Malformed, "bump axis " + axes[i].var + " repeated");
  }
  Node n;
  n.kind = Kind::BoxBump;
  n.axes = std::move(axes);
  return make(std::move(n));
}

Term unary(Kind k, const Term& a) {
  switch (k) {
    case Kind::Exp: return exp(a);
    case Kind::Sin: return sin(a);
    case Kind::Cos: return cos(a);
    case Kind::Atan: return atan(a);
    case Kind::Tanh: return tanh(a);
    case Kind::PSqrt: return psqrt(a);
    case Kind::PInv: return pinv(a);
    case Kind::Neg: return neg(a);
    default: throw Error(ErrorCode::Malformed, std::string("not a unary kind: ") + kind_name(k));
  }
}

Term rebuild(const Term& t, std::vector<Term> children) {
  switch (t.kind()) {
    case Kind::Var:
    case Kind::Const:
    case Kind::BoxBump: return t;
    case Kind::Add: return add(std::move(children));
    case Kind::Mul: return mul(std::move(children));
    case Kind::Sub: return sub(children.at(0), children.at(1));
    case Kind::PowNat: return pow(children.at(0), t.exponent());
    default: return unary(t.kind(), children.at(0));
  }
}

std::set<std::string> support(const Term& t) {
  std::set<std::string> out;
  std::vector<const Term*> stack{&t};
  while (!stack.empty()) {
    const Term* cur = stack.back();
    stack.pop_back();
    if (cur->kind() == Kind::Var) out.insert(cur->name());
    if (cur->kind() == Kind::BoxBump)
      for (const auto& a : cur->axes()) out.insert(a.var);
    for (const auto& c : cur->children()) stack.push_back(&c);
  }
  return out;
}

namespace {

std::string bump_header(const Term& t) {
  std::ostringstream os;
  os << "bump[";
  for (std::size_t i = 0; i < t.axes().size(); ++i) {
    if (i) os << ";";
    os << to_string(t.axes()[i].lo) << "," << to_string(t.axes()[i].hi);
  }
  os << "]";
  return os.str();
}

void sexpr(const Term& t, std::ostream& os) {
  switch (t.kind()) {
    case Kind::Var: os << t.name(); return;
    case Kind::Const: os << to_string(t.value()); return;
    case Kind::BoxBump:
      os << "(" << bump_header(t);
      for (const auto& a : t.axes()) os << " " << a.var;
      os << ")";
      return;
    case Kind::PowNat:
      os << "(^ ";
      sexpr(t.child(0), os);
      os << " " << t.exponent() << ")";
      return;
    default:
      os << "(" << kind_name(t.kind());
      for (const auto& c : t.children()) {
        os << " ";
        sexpr(c, os);
      }
      os << ")";
  }
}

// Precedence: 1 additive, 2 multiplicative, 3 unary minus, 4 power, 5 atom.
int precedence(const Term& t) {
  switch (t.kind()) {
    case Kind::Add:
    case Kind::Sub: return 1;
    case Kind::Mul: return 2;
    case Kind::Neg: return 3;
    case Kind::PowNat: return 4;
    case Kind::Const:
      if (t.value() < 0) return 3;
      return t.value().get_den() == 1 ? 5 : 4;
    default: return 5;
  }
}

void infix(const Term& t, std::ostream& os);

void infix_child(const Term& c, int min_prec, std::ostream& os) {
  bool paren = precedence(c) < min_prec;
  if (c.is_const() && c.value() < 0) paren = true;
  if (paren) os << "(";
  infix(c, os);
  if (paren) os << ")";
}

void infix(const Term& t, std::ostream& os) {
  switch (t.kind()) {
    case Kind::Var: os << t.name(); return;
    case Kind::Const: os << to_string(t.value()); return;
    case Kind::Add:
      for (std::size_t i = 0; i < t.children().size(); ++i) {
        if (i) os << " + ";
        infix_child(t.child(i), 2, os);
      }
      return;
    case Kind::Sub:
      infix_child(t.child(0), 2, os);
      os << " - ";
      infix_child(t.child(1), 2, os);
      return;
    case Kind::Mul:
      for (std::size_t i = 0; i < t.children().size(); ++i) {
        if (i) os << "*";
        infix_child(t.child(i), 3, os);
      }
      return;
    case Kind::Neg:
      os << "-";
      if (t.child(0).is_const()) {
        os << "(" << to_string(t.child(0).value()) << ")";
        return;
      }
      infix_child(t.child(0), 4, os);
      return;
    case Kind::PowNat:
      infix_child(t.child(0), 5, os);
      os << "^" << t.exponent();
      return;
    case Kind::BoxBump: {
      os << bump_header(t) << "(";
      for (std::size_t i = 0; i < t.axes().size(); ++i) {
        if (i) os << ", ";
        os << t.axes()[i].var;
      }
      os << ")";
      return;
    }
    default:
      os << kind_name(t.kind()) << "(";
      infix(t.child(0), os);
      os << ")";
  }
}

}  // namespace

std::string to_sexpr(const Term& t) {
  std::ostringstream os;
  sexpr(t, os);
  return os.str();
}

std::string to_infix(const Term& t) {
  std::ostringstream os;
  infix(t, os);
  return os.str();
}

}  // namespace cinf
