#include "cinf/session.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "cinf/errors.hpp"
#include "cinf/galois_spectra.hpp"
#include "cinf/localization.hpp"
#include "cinf/serialize.hpp"
#include "cinf/term_calculus.hpp"

namespace cinf {

namespace {

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

Rational rational_or_throw(const std::string& s) {
  auto q = parse_rational(s);
  if (!q) throw SyntaxError("malformed number '" + s + "'", 0);
  return *q;
}

unsigned long natural_or_throw(const std::string& what, const std::string& s) {
  auto q = parse_rational(s);
  if (!q || q->get_den() != 1 || *q < 0)
    throw Error(ErrorCode::Malformed, what + " must be a natural number, got '" + s + "'");
  return q->get_num().get_ui();
}

std::vector<mpfr_prec_t> parse_precisions(const std::string& s) {
  std::vector<mpfr_prec_t> out;
  std::stringstream ss(strip_spaces(s));
  std::string part;
  while (std::getline(ss, part, ','))
    out.push_back(static_cast<mpfr_prec_t>(natural_or_throw("precision", part)));
  if (out.empty()) throw Error(ErrorCode::Malformed, "empty precision schedule");
  for (auto p : out)
    if (p < MPFR_PREC_MIN || p > 100000)
      throw Error(ErrorCode::Malformed, "precision out of range");
  return out;
}

std::string range_str(const Range& r) { return "[" + to_string(r.lo) + "," + to_string(r.hi) + "]"; }

}  // namespace

// ---------------------------------------------------------------------------
// Config

void Config::apply_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Malformed, "config must be a JSON object");
  if (j.contains("v")) check_version(j);
  if (j.contains("default-region")) default_region = parse_range(j["default-region"].get<std::string>());
  if (j.contains("depth")) depth = j["depth"].get<unsigned>();
  if (j.contains("cell-budget")) cell_budget = j["cell-budget"].get<std::size_t>();
  if (j.contains("precision-schedule")) {
    precisions.clear();
    for (const auto& p : j["precision-schedule"]) precisions.push_back(p.get<mpfr_prec_t>());
  }
  if (j.contains("workers")) workers = std::max(1u, j["workers"].get<unsigned>());
}

void Config::apply_env() {
  if (const char* s = std::getenv("CINF_REGION")) default_region = parse_range(s);
  if (const char* s = std::getenv("CINF_DEPTH")) depth = natural_or_throw("CINF_DEPTH", s);
  if (const char* s = std::getenv("CINF_BUDGET")) cell_budget = natural_or_throw("CINF_BUDGET", s);
  if (const char* s = std::getenv("CINF_PRECISION")) precisions = parse_precisions(s);
  if (const char* s = std::getenv("CINF_WORKERS"))
    workers = std::max<unsigned long>(1, natural_or_throw("CINF_WORKERS", s));
}

nlohmann::json Config::to_json() const {
  return {{"default-region", range_str(default_region)},
          {"depth", depth},
          {"cell-budget", cell_budget},
          {"precision-schedule", precisions},
          {"workers", workers}};
}

VerifierOptions Config::verifier() const {
  VerifierOptions o;
  o.max_depth = depth;
  o.cell_budget = cell_budget;
  o.precisions = precisions;
  o.workers = workers;
  return o;
}

// ---------------------------------------------------------------------------
// Literals

Range parse_range(const std::string& text) {
  std::string s = strip_spaces(text);
  if (s.size() < 5 || s.front() != '[' || s.back() != ']')
    throw SyntaxError("expected a range [lo,hi], got '" + text + "'", 0);
  auto comma = s.find(',');
  if (comma == std::string::npos) throw SyntaxError("expected a range [lo,hi]", 0);
  Range r{rational_or_throw(s.substr(1, comma - 1)),
          rational_or_throw(s.substr(comma + 1, s.size() - comma - 2))};
  if (r.lo > r.hi) throw Error(ErrorCode::Malformed, "empty range " + text);
  return r;
}

std::map<std::string, Range> parse_region(const std::string& text) {
  std::string s = strip_spaces(text);
  std::map<std::string, Range> out;
  if (!s.empty() && s.front() == '[') {
    out.emplace("", parse_range(s));
    return out;
  }
  std::size_t i = 0;
  while (i < s.size()) {
    auto colon = s.find(':', i);
    auto close = s.find(']', i);
    if (colon == std::string::npos || close == std::string::npos || colon > close)
      throw SyntaxError("expected var:[lo,hi] in region '" + text + "'", i);
    std::string name = s.substr(i, colon - i);
    if (!is_identifier(name)) throw SyntaxError("bad variable name '" + name + "'", i);
    out[name] = parse_range(s.substr(colon + 1, close - colon));
    i = close + 1;
    if (i < s.size()) {
      if (s[i] != ',') throw SyntaxError("expected ',' between region ranges", i);
      ++i;
    }
  }
  return out;
}

Point parse_point(const std::string& text) {
  std::string s = strip_spaces(text);
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  Point p;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) {
      p.emplace("", rational_or_throw(part));
      continue;
    }
    std::string name = part.substr(0, eq);
    if (!is_identifier(name)) throw SyntaxError("bad variable name '" + name + "'", 0);
    p[name] = rational_or_throw(part.substr(eq + 1));
  }
  return p;
}

namespace {

std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Ideal parse_ideal_literal(const std::string& text, const TermEnv& env) {
  std::string s = strip_spaces(text);
  if (s == "0" || s == "<>") return Ideal();
  if (s.size() < 2 || s.front() != '<' || s.back() != '>')
    throw SyntaxError("expected an ideal <g1, ..., gk>, got '" + text + "'", 0);
  std::string body = text.substr(text.find('<') + 1);
  body = body.substr(0, body.rfind('>'));
  std::vector<Term> gens;
  for (const auto& part : split_top_level(body, ',')) gens.push_back(parse_term(part, env));
  return Ideal(std::move(gens));
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  char quote = 0;
  bool have = false;
  for (char c : line) {
    if (quote) {
      if (c == quote) quote = 0;
      else cur += c;
      continue;
    }
    if (c == '"' || c == '\'') {
      quote = c;
      have = true;
      continue;
    }
    if (c == '(' || c == '[' || c == '<') ++depth;
    if (c == ')' || c == ']' || c == '>') depth = std::max(0, depth - 1);
    if (std::isspace(static_cast<unsigned char>(c)) && depth == 0) {
      if (have || !cur.empty()) out.push_back(cur);
      cur.clear();
      have = false;
      continue;
    }
    cur += c;
  }
  if (quote) throw SyntaxError("unterminated quote", line.size());
  if (have || !cur.empty()) out.push_back(cur);
  return out;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

struct Args {
  std::vector<std::string> positional;
  std::map<std::string, std::vector<std::string>> kw;

  std::optional<std::string> get(const std::string& k) const {
    auto it = kw.find(k);
    if (it == kw.end()) return std::nullopt;
    return it->second.front();
  }
};

std::string join(const std::vector<std::string>& ts, std::size_t from, std::size_t to,
                 const char* sep = " ") {
  std::string s;
  for (std::size_t i = from; i < to; ++i) {
    if (i > from) s += sep;
    s += ts[i];
  }
  return s;
}

Args parse_args(const std::vector<std::string>& tokens, const std::set<std::string>& keywords,
                const std::set<std::string>& repeatable = {}) {
  Args a;
  std::string key;
  std::vector<std::string> value;
  auto flush = [&] {
    if (key.empty()) return;
    if (value.empty()) throw SyntaxError("'" + key + "' needs a value", 0);
    if (a.kw.count(key) && !repeatable.count(key))
      throw SyntaxError("'" + key + "' given twice", 0);
    a.kw[key].push_back(join(value, 0, value.size()));
    value.clear();
  };
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    if (keywords.count(tokens[i])) {
      flush();
      key = tokens[i];
    } else if (key.empty()) {
      a.positional.push_back(tokens[i]);
    } else {
      value.push_back(tokens[i]);
    }
  }
  flush();
  return a;
}

/// Splits positional words into exactly k terms, first valid split wins.
std::vector<Term> split_terms(const std::string& cmd, const std::vector<std::string>& words,
                              std::size_t k, const TermEnv& env) {
  if (words.size() < k)
    throw SyntaxError("'" + cmd + "' takes " + std::to_string(k) + " term" + (k > 1 ? "s" : "") +
                          ", got " + std::to_string(words.size()),
                      0);
  if (k == 1) return {parse_term(join(words, 0, words.size()), env)};
  std::optional<std::string> first_error;
  for (std::size_t cut = 1; cut < words.size(); ++cut) {
    try {
      Term a = parse_term(join(words, 0, cut), env);
      Term b = parse_term(join(words, cut, words.size()), env);
      return {a, b};
    } catch (const SyntaxError& e) {
      if (!first_error) first_error = e.what();
    }
  }
  throw SyntaxError("cannot split the arguments of '" + cmd + "' into two terms (" +
                        *first_error + ")",
                    0);
}

bool reserved_word(const std::string& s) {
  static const std::set<std::string> words{"mod", "witness", "on", "as", "at", "let", "ideal"};
  return words.count(s) > 0 || is_reserved_name(s);
}

std::string verdict_line(const Verdict& v) {
  std::string s = to_string(v.outcome);
  if (v.witness) s += " at " + to_string(*v.witness);
  if (!v.reason.empty()) s += " (" + v.reason + ")";
  return s;
}

int exit_for(Outcome o) {
  switch (o) {
    case Outcome::Proved: return kProved;
    case Outcome::Refuted: return kRefuted;
    case Outcome::Unknown: return kUnknown;
  }
  return kError;
}

CommandResult verdict_result(const std::string& title, const Verdict& v, json artifact) {
  CommandResult r;
  r.exit_code = exit_for(v.outcome);
  r.text = title + ": " + verdict_line(v) + "\n";
  r.artifact = std::move(artifact);
  return r;
}

}  // namespace

CommandResult Session::execute(const std::vector<std::string>& tokens) {
  try {
    return run(tokens);
  } catch (const Error& e) {
    CommandResult r;
    switch (e.code()) {
      case ErrorCode::OrderRefuted:
      case ErrorCode::NotInvertibleOnZeroset:
      case ErrorCode::NotEqual:
      case ErrorCode::NotNowhereZero: r.exit_code = kRefuted; break;
      case ErrorCode::UnknownVerdict: r.exit_code = kUnknown; break;
      default: r.exit_code = kError;
    }
    r.artifact = {{"v", kSchemaVersion},
                  {"error", to_string(e.code())},
                  {"message", e.what()},
                  {"outcome", r.exit_code == kRefuted  ? "Refuted"
                              : r.exit_code == kUnknown ? "Unknown"
                                                        : "Error"}};
    if (e.witness()) r.artifact["witness"] = point_to_json(*e.witness());
    if (r.exit_code == kRefuted)
      r.text = "Refuted at " + to_string(*e.witness()) + ": " + e.what() + "\n";
    else if (r.exit_code == kUnknown)
      r.text = std::string("Unknown: ") + e.what() + "\n";
    else
      r.text = std::string("error: ") + to_string(e.code()) + ": " + e.what() + "\n";
    return r;
  } catch (const nlohmann::json::exception& e) {
    CommandResult r;
    r.exit_code = kError;
    r.text = std::string("error: Malformed: ") + e.what() + "\n";
    r.artifact = {{"v", kSchemaVersion}, {"error", "Malformed"}, {"message", e.what()}};
    return r;
  }
}

CommandResult Session::run(const std::vector<std::string>& tokens) {
  if (tokens.empty()) return {};
  const std::string& cmd = tokens[0];
  const VerifierOptions vopt = config.verifier();
  CertOptions copt{vopt, config.assume_global};

  auto ideal_of = [&](const std::optional<std::string>& text) -> Ideal {
    if (!text) return Ideal();
    std::string s = strip_spaces(*text);
    if (auto it = ideals_.find(s); it != ideals_.end()) return it->second;
    if (s == "0" || (!s.empty() && s.front() == '<')) return parse_ideal_literal(*text, terms_);
    throw Error(ErrorCode::UnknownName, "unknown ideal '" + s + "'");
  };

  auto region_for = [&](const std::vector<Term>& ts, const std::optional<std::string>& spec) {
    std::set<std::string> vars;
    for (const auto& t : ts)
      for (const auto& v : support(t)) vars.insert(v);
    std::map<std::string, Range> given;
    if (spec) given = parse_region(*spec);
    std::map<std::string, Range> ranges;
    for (const auto& v : vars) {
      if (auto it = given.find(v); it != given.end()) ranges[v] = it->second;
      else if (auto all = given.find(""); all != given.end()) ranges[v] = all->second;
      else ranges[v] = config.default_region;
    }
    for (const auto& [v, r] : given)
      if (!v.empty()) ranges[v] = r;
    return Box(std::move(ranges));
  };

  auto store = [&](const Args& a, const json& cert) {
    if (auto name = a.get("as")) certificates_[strip_spaces(*name)] = cert;
  };

  if (cmd == "let" || cmd == "ideal") {
    std::vector<std::string> rest(tokens.begin() + 1, tokens.end());
    if (!rest.empty() && rest[0].find('=') != std::string::npos && rest[0] != "=") {
      auto eq = rest[0].find('=');
      std::string lhs = rest[0].substr(0, eq), rhs = rest[0].substr(eq + 1);
      rest[0] = lhs;
      rest.insert(rest.begin() + 1, "=");
      if (!rhs.empty()) rest.insert(rest.begin() + 2, rhs);
    }
    if (rest.size() < 3 || rest[1] != "=")
      throw SyntaxError("expected '" + cmd + " NAME = VALUE'", 0);
    const std::string& name = rest[0];
    if (!is_identifier(name) || reserved_word(name))
      throw SyntaxError("'" + name + "' cannot be used as a name", 0);
    std::string value = join(rest, 2, rest.size());
    CommandResult r;
    if (cmd == "let") {
      Term t = parse_term(value, terms_);
      terms_[name] = t;
      r.text = name + " := " + to_infix(t) + "\n";
      r.artifact = {{"v", kSchemaVersion}, {"name", name}, {"term", term_to_json(t)}};
    } else {
      Ideal I = ideal_of(value);
      ideals_[name] = I;
      r.text = name + " := " + I.str() + "\n";
      Presentation p{{}, I};
      for (const auto& v : I.support()) p.variables.push_back(v);
      r.artifact = cinf::to_json(p);
    }
    return r;
  }

  if (cmd == "order" || cmd == "equal" || cmd == "invertible" || cmd == "square") {
    std::size_t arity = (cmd == "order" || cmd == "equal") ? 2 : 1;
    std::set<std::string> kws{"mod", "on", "as"};
    if (cmd != "equal") kws.insert("witness");
    Args a = parse_args(tokens, kws);
    auto ts = split_terms(cmd, a.positional, arity, terms_);
    Ideal I = ideal_of(a.get("mod"));
    std::optional<Term> phi;
    if (auto w = a.get("witness")) phi = parse_term(*w, terms_);
    std::vector<Term> involved = ts;
    for (const auto& g : I.generators()) involved.push_back(g);
    if (phi) involved.push_back(*phi);
    Box region = region_for(involved, a.get("on"));

    Certificate c;
    std::string title;
    if (cmd == "order") {
      c = cert_order(ts[0], ts[1], I, phi, region, copt);
      title = to_infix(ts[0]) + " < " + to_infix(ts[1]);
    } else if (cmd == "equal") {
      c = cert_equal(ts[0], ts[1], I, region, copt);
      title = to_infix(ts[0]) + " = " + to_infix(ts[1]);
    } else if (cmd == "invertible") {
      c = cert_invertible(ts[0], I, phi, region, copt);
      title = to_infix(ts[0]) + " invertible";
    } else {
      c = cert_square(ts[0], I, phi, region, copt);
      title = to_infix(ts[0]) + " is a unit square";
    }
    json cert = cinf::to_json(c);
    store(a, cert);
    CommandResult r;
    r.exit_code = c.verdict.proved() ? kProved : kUnknown;
    std::ostringstream os;
    os << (c.verdict.proved() ? "Proved" : "Assumed") << ": " << title << " mod " << I.str()
       << " on " << region.str() << "\n";
    os << "  route    " << c.route << "\n";
    os << "  witness  " << to_infix(c.witness) << "\n";
    if (c.unit) os << "  unit     " << to_infix(*c.unit) << "\n";
    if (c.inverse) os << "  inverse  " << to_infix(*c.inverse) << "\n";
    for (const auto& it : c.combination)
      os << "  cofactor " << to_infix(it.cofactor) << "  (of " << to_infix(it.element) << ")\n";
    os << "  identity " << (c.symbolic_check() ? "checked" : "NOT checked") << "\n";
    r.text = os.str();
    r.artifact = cert;
    return r;
  }

  if (cmd == "radical-member" || cmd == "filter") {
    Args a = parse_args(tokens, {"mod", "on"});
    auto ts = split_terms(cmd, a.positional, 1, terms_);
    Ideal I = ideal_of(a.get("mod"));
    std::vector<Term> involved = ts;
    for (const auto& g : I.generators()) involved.push_back(g);
    Box region = region_for(involved, a.get("on"));
    Verdict v = cmd == "radical-member" ? radical_member(ts[0], I, region, vopt)
                                        : filter_member(ts[0], hat(I), region, vopt);
    ZerosetQuery q;
    q.constraint = I.sigma();
    q.predicate = Predicate::EqualsZero;
    q.subject = ts[0];
    q.region = region;
    return verdict_result(cmd + " " + to_infix(ts[0]) + " mod " + I.str(), v, cinf::to_json(q, v));
  }

  if (cmd == "localize") {
    Args a = parse_args(tokens, {"--invert", "on"}, {"--invert"});
    if (a.positional.size() != 1) throw SyntaxError("expected 'localize FILE --invert TERM'", 0);
    std::ifstream in(a.positional[0]);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + a.positional[0]);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::Malformed, a.positional[0] + ": " + e.what());
    }
    Presentation A = presentation_from_json(doc);
    std::vector<Term> S;
    if (a.kw.count("--invert"))
      for (const auto& t : a.kw["--invert"]) S.push_back(parse_term(t, terms_));
    if (S.empty()) throw SyntaxError("localize needs at least one --invert TERM", 0);
    LocalizedRing L = localize(A, S);
    std::vector<Term> involved = S;
    for (const auto& g : A.ideal.generators()) involved.push_back(g);
    Box region = region_for(involved, a.get("on"));
    for (const auto& v : A.variables)
      if (!region.has(v)) region.set(v, config.default_region);
    Verdict v = detect_trivial(L, region, vopt);
    CommandResult r;
    std::ostringstream os;
    os << "localized ring: " << L.extended.ideal.str() << " over";
    for (const auto& v2 : L.extended.variables) os << " " << v2;
    os << "\n  trivial: " << verdict_line(v) << "\n";
    r.text = os.str();
    r.artifact = cinf::to_json(L);
    r.artifact["trivial"] = cinf::to_json(v);
    r.exit_code = exit_for(v.outcome);
    return r;
  }

  if (cmd == "spec" || cmd == "sper") {
    Args a = parse_args(tokens, {"at", "--term"});
    if (!a.positional.empty() || !a.get("at") || !a.get("--term"))
      throw SyntaxError("expected '" + cmd + " at POINT --term TERM'", 0);
    Term t = parse_term(*a.get("--term"), terms_);
    Point x = parse_point(*a.get("at"));
    if (auto it = x.find(""); it != x.end()) {
      auto vars = support(t);
      if (vars.size() > 1) throw SyntaxError("name the coordinates as x=...,y=...", 0);
      Rational q = it->second;
      x.erase(it);
      for (const auto& v : vars) x[v] = q;
    }
    PointSpectra p = point_spectra(x, t);
    CommandResult r;
    std::ostringstream os;
    if (cmd == "spec") {
      os << "D(" << to_infix(t) << ") at " << to_string(x) << ": " << to_string(p.in_D) << "\n";
    } else {
      os << "H(" << to_infix(t) << ") at " << to_string(x) << ": " << to_string(p.in_H_plus)
         << "\nH(-(" << to_infix(t) << ")) at " << to_string(x) << ": "
         << to_string(p.in_H_minus) << "\n";
    }
    r.text = os.str();
    r.artifact = cinf::to_json(p);
    r.artifact["v"] = kSchemaVersion;
    r.artifact["point"] = point_to_json(x);
    r.artifact["term"] = term_to_json(t);
    return r;
  }

  if (cmd == "root") {
    Args a = parse_args(tokens, {"--on", "--tol"});
    auto ts = split_terms(cmd, a.positional, 1, terms_);
    auto vars = support(ts[0]);
    if (vars.size() != 1) throw Error(ErrorCode::Malformed, "root needs a term in one variable");
    if (!a.get("--on")) throw SyntaxError("expected 'root TERM --on [a,b] --tol q'", 0);
    Range on = parse_range(*a.get("--on"));
    Rational tol = a.get("--tol") ? rational_or_throw(strip_spaces(*a.get("--tol"))) : Rational(mpz_class(1), mpz_class("10000000000"));
    RootEnclosure e = ivt_root(ts[0], *vars.begin(), on.lo, on.hi, tol, vopt);
    CommandResult r;
    std::ostringstream os;
    os.precision(17);
    os << "root of " << to_infix(ts[0]) << " in [" << to_string(e.lo) << ", " << to_string(e.hi)
       << "]\n  ~ [" << to_double(e.lo) << ", " << to_double(e.hi) << "]\n";
    r.text = os.str();
    r.artifact = cinf::to_json(e);
    r.artifact["v"] = kSchemaVersion;
    r.artifact["term"] = term_to_json(ts[0]);
    return r;
  }

  if (cmd == "save" || cmd == "load") {
    if (tokens.size() != 2) throw SyntaxError("expected '" + cmd + " FILE'", 0);
    if (cmd == "save") save(tokens[1]);
    else load(tokens[1]);
    CommandResult r;
    r.text = (cmd == "save" ? "saved " : "loaded ") + tokens[1] + "\n";
    return r;
  }

  if (cmd == "show") {
    CommandResult r;
    r.artifact = to_json();
    r.text = canonical_dump(r.artifact);
    return r;
  }

  if (cmd == "help") {
    CommandResult r;
    r.text =
        "let NAME = TERM\n"
        "ideal NAME = <g1, ..., gk>\n"
        "order F G [mod I] [witness W] [on REGION] [as NAME]\n"
        "equal F G [mod I] [on REGION] [as NAME]\n"
        "invertible F [mod I] [witness W] [on REGION] [as NAME]\n"
        "square F [mod I] [witness W] [on REGION] [as NAME]\n"
        "radical-member A mod I [on REGION]\n"
        "filter G mod I [on REGION]\n"
        "localize FILE --invert TERM [--invert TERM ...] [on REGION]\n"
        "spec at POINT --term TERM\n"
        "sper at POINT --term TERM\n"
        "root TERM --on [a,b] [--tol q]\n"
        "save FILE | load FILE | show | help | quit\n";
    return r;
  }

  throw SyntaxError("unknown command '" + cmd + "'", 0);
}

// ---------------------------------------------------------------------------
// Persistence

nlohmann::json Session::to_json() const {
  json terms = json::object();
  for (const auto& [n, t] : terms_) terms[n] = term_to_json(t);
  json ideals = json::object();
  for (const auto& [n, I] : ideals_) {
    json gens = json::array();
    for (const auto& g : I.generators()) gens.push_back(term_to_json(g));
    ideals[n] = gens;
  }
  json certs = json::object();
  for (const auto& [n, c] : certificates_) certs[n] = c;
  return {{"v", kSchemaVersion},
          {"config", config.to_json()},
          {"terms", terms},
          {"ideals", ideals},
          {"certificates", certs}};
}

Session Session::from_json(const nlohmann::json& j) {
  check_version(j);
  Session s;
  if (j.contains("config")) s.config.apply_json(j["config"]);
  if (j.contains("terms"))
    for (const auto& [n, t] : j["terms"].items()) s.terms_[n] = term_from_json(t);
  if (j.contains("ideals"))
    for (const auto& [n, gens] : j["ideals"].items()) {
      std::vector<Term> gs;
      for (const auto& g : gens) gs.push_back(term_from_json(g));
      s.ideals_[n] = Ideal(std::move(gs));
    }
  if (j.contains("certificates"))
    for (const auto& [n, c] : j["certificates"].items()) s.certificates_[n] = c;
  return s;
}

void Session::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << canonical_dump(to_json());
}

void Session::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Malformed, path + ": " + e.what());
  }
  *this = from_json(j);
}

}  // namespace cinf
