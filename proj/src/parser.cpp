#include "cinf/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "cinf/errors.hpp"

namespace cinf {

namespace {

const std::map<std::string, Kind, std::less<>>& primitives() {
  static const std::map<std::string, Kind, std::less<>> m{
      {"exp", Kind::Exp},   {"sin", Kind::Sin},     {"cos", Kind::Cos},
      {"atan", Kind::Atan}, {"tanh", Kind::Tanh},   {"psqrt", Kind::PSqrt},
      {"pinv", Kind::PInv}, {"neg", Kind::Neg}};
  return m;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

/// Shared character cursor for both grammars.
class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_ws();
    return i_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  char peek_raw(std::size_t ahead = 0) const {
    return i_ + ahead < s_.size() ? s_[i_ + ahead] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::size_t pos() const { return i_; }
  void reset(std::size_t p) { i_ = p; }

  [[noreturn]] void fail(const std::string& what) const {
    std::string near = i_ < s_.size() ? std::string(s_.substr(i_, 12)) : std::string("end of input");
    throw SyntaxError(what + " near '" + near + "'", i_);
  }

  bool at_number() {
    skip_ws();
    return digit(peek_raw()) || (peek_raw() == '.' && digit(peek_raw(1)));
  }

  /// Unsigned literal: 12, 3/4, 0.25, 1e-10.
  Rational number() {
    skip_ws();
    std::size_t start = i_;
    while (digit(peek_raw())) ++i_;
    if (peek_raw() == '/' && digit(peek_raw(1))) {
      ++i_;
      while (digit(peek_raw())) ++i_;
    } else {
      if (peek_raw() == '.') {
        ++i_;
        while (digit(peek_raw())) ++i_;
      }
      if ((peek_raw() == 'e' || peek_raw() == 'E') &&
          (digit(peek_raw(1)) ||
           ((peek_raw(1) == '-' || peek_raw(1) == '+') && digit(peek_raw(2))))) {
        i_ += 2;
        while (digit(peek_raw())) ++i_;
      }
    }
    auto q = parse_rational(s_.substr(start, i_ - start));
    if (!q) {
      i_ = start;
      fail("malformed number");
    }
    return *q;
  }

  Rational signed_number() {
    bool negative = accept('-');
    if (!at_number()) fail("expected a number");
    Rational q = number();
    return negative ? Rational(-q) : q;
  }

  std::string identifier() {
    skip_ws();
    if (!ident_start(peek_raw())) fail("expected an identifier");
    std::size_t start = i_;
    while (ident_char(peek_raw())) ++i_;
    return std::string(s_.substr(start, i_ - start));
  }

  bool at_identifier() {
    skip_ws();
    return ident_start(peek_raw());
  }

  /// "[lo,hi;lo,hi]" following the word bump.
  std::vector<std::pair<Rational, Rational>> bump_bounds() {
    expect('[');
    std::vector<std::pair<Rational, Rational>> out;
    do {
      Rational lo = signed_number();
      expect(',');
      Rational hi = signed_number();
      out.emplace_back(lo, hi);
    } while (accept(';'));
    expect(']');
    return out;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

Term make_bump(Cursor& c, const std::vector<std::pair<Rational, Rational>>& bounds,
               const std::vector<std::string>& vars) {
  if (bounds.size() != vars.size())
    c.fail("bump has " + std::to_string(bounds.size()) + " boxes but " +
           std::to_string(vars.size()) + " variables");
  std::vector<BumpAxis> axes;
  for (std::size_t i = 0; i < vars.size(); ++i) axes.push_back({vars[i], bounds[i].first, bounds[i].second});
  try {
    return bump(std::move(axes));
  } catch (const Error& e) {
    c.fail(e.what());
  }
}

Term resolve(const std::string& name, const TermEnv& env) {
  if (auto it = env.find(name); it != env.end()) return it->second;
  if (auto it = primitives().find(name); it != primitives().end())
    return unary(it->second, var("x"));
  return var(name);
}

// ---------------------------------------------------------------------------

class SexprParser {
 public:
  SexprParser(std::string_view s, const TermEnv& env) : c_(s), env_(env) {}

  Term parse() {
    Term t = expr();
    if (!c_.done()) c_.fail("unexpected trailing input");
    return t;
  }

 private:
  Term expr() {
    if (c_.accept('(')) return compound();
    if (c_.peek() == '-' && (digit(c_.peek_raw(1)) || c_.peek_raw(1) == '.')) {
      c_.accept('-');
      return constant(-c_.number());
    }
    if (c_.at_number()) return constant(c_.number());
    if (c_.at_identifier()) return resolve(c_.identifier(), env_);
    c_.fail("expected a term");
  }

  Term compound() {
    std::string op;
    char ch = c_.peek();
    if (ch == '+' || ch == '-' || ch == '*' || ch == '^') {
      c_.accept(ch);
      op = std::string(1, ch);
    } else {
      op = c_.identifier();
    }
    if (op == "bump") {
      auto bounds = c_.bump_bounds();
      std::vector<std::string> vars;
      while (!c_.accept(')')) vars.push_back(c_.identifier());
      return make_bump(c_, bounds, vars);
    }
    std::vector<Term> args;
    std::optional<unsigned> exponent;
    while (!c_.accept(')')) {
      if (c_.done()) c_.fail("unbalanced parentheses");
      if (op == "^" && args.size() == 1) {
        if (!c_.at_number()) c_.fail("exponent must be a natural number");
        Rational n = c_.number();
        if (n.get_den() != 1 || n < 0 || n > 100000) c_.fail("exponent must be a natural number");
        exponent = static_cast<unsigned>(n.get_num().get_ui());
        continue;
      }
      args.push_back(expr());
    }
    if (op == "+") {
      if (args.size() < 2) c_.fail("'+' needs at least two arguments");
      return add(std::move(args));
    }
    if (op == "*") {
      if (args.size() < 2) c_.fail("'*' needs at least two arguments");
      return mul(std::move(args));
    }
    if (op == "-") {
      if (args.size() == 1) return neg(args[0]);
      if (args.size() == 2) return sub(args[0], args[1]);
      c_.fail("'-' takes one or two arguments");
    }
    if (op == "^") {
      if (args.size() != 1 || !exponent) c_.fail("'^' takes a base and a natural exponent");
      return pow(args[0], *exponent);
    }
    auto it = primitives().find(op);
    if (it == primitives().end()) c_.fail("unknown operator '" + op + "'");
    if (args.size() != 1) c_.fail("'" + op + "' takes one argument");
    return unary(it->second, args[0]);
  }

  Cursor c_;
  const TermEnv& env_;
};

// ---------------------------------------------------------------------------

class InfixParser {
 public:
  InfixParser(std::string_view s, const TermEnv& env) : c_(s), env_(env) {}

  Term parse() {
    if (c_.done()) c_.fail("empty term");
    Term t = sum();
    if (!c_.done()) c_.fail("unexpected trailing input");
    return t;
  }

 private:
  Term sum() {
    Term acc = product();
    std::vector<Term> run{acc};
    while (true) {
      if (c_.accept('+')) {
        run.push_back(product());
      } else if (c_.peek() == '-') {
        c_.accept('-');
        Term lhs = add(std::move(run));
        run = {sub(lhs, product())};
      } else {
        break;
      }
    }
    return add(std::move(run));
  }

  Term product() {
    std::vector<Term> factors{unary_term()};
    while (true) {
      if (c_.accept('*')) {
        factors.push_back(unary_term());
      } else if (c_.peek() == '/') {
        c_.accept('/');
        std::size_t at = c_.pos();
        Term d = unary_term();
        if (!d.is_const()) {
          c_.reset(at);
          c_.fail("division is only by a constant");
        }
        if (d.value() == 0) {
          c_.reset(at);
          c_.fail("division by zero");
        }
        factors.push_back(constant(Rational(1) / d.value()));
      } else {
        break;
      }
    }
    return mul(std::move(factors));
  }

  Term unary_term() {
    if (c_.peek() == '-') {
      c_.accept('-');
      std::size_t at = c_.pos();
      if (c_.at_number()) {
        Rational q = c_.number();
        if (c_.peek() != '^') return constant(-q);
        c_.reset(at);
      }
      return neg(unary_term());
    }
    return power();
  }

  Term power() {
    Term base = atom();
    if (c_.accept('^')) {
      if (!c_.at_number()) c_.fail("exponent must be a natural number");
      Rational n = c_.number();
      if (n.get_den() != 1 || n < 0 || n > 100000) c_.fail("exponent must be a natural number");
      if (c_.peek() == '^') c_.fail("chained exponents need parentheses");
      return pow(base, static_cast<unsigned>(n.get_num().get_ui()));
    }
    return base;
  }

  Term atom() {
    if (c_.accept('(')) {
      Term t = sum();
      c_.expect(')');
      return t;
    }
    if (c_.at_number()) return constant(c_.number());
    if (!c_.at_identifier()) c_.fail("expected a term");
    std::string name = c_.identifier();
    if (name == "bump" && c_.peek() == '[') {
      auto bounds = c_.bump_bounds();
      c_.expect('(');
      std::vector<std::string> vars;
      do vars.push_back(c_.identifier());
      while (c_.accept(','));
      c_.expect(')');
      return make_bump(c_, bounds, vars);
    }
    auto prim = primitives().find(name);
    if (prim != primitives().end() && prim->second != Kind::Neg && c_.peek() == '(') {
      c_.accept('(');
      Term arg = sum();
      if (c_.peek() == ',') c_.fail("'" + name + "' takes one argument");
      c_.expect(')');
      return unary(prim->second, arg);
    }
    return resolve(name, env_);
  }

  Cursor c_;
  const TermEnv& env_;
};

}  // namespace

Term parse_sexpr(std::string_view text, const TermEnv& env) {
  return SexprParser(text, env).parse();
}

Term parse_infix(std::string_view text, const TermEnv& env) {
  return InfixParser(text, env).parse();
}

Term parse_term(std::string_view text, const TermEnv& env) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && text[i] == '(') {
    try {
      return parse_sexpr(text, env);
    } catch (const SyntaxError&) {
    }
  }
  return parse_infix(text, env);
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !ident_start(s.front())) return false;
  for (char ch : s)
    if (!ident_char(ch)) return false;
  return true;
}

bool is_reserved_name(std::string_view s) {
  return primitives().count(s) > 0 || s == "bump";
}

}  // namespace cinf
