#include "cinf/galois_spectra.hpp"

#include "cinf/errors.hpp"
#include "cinf/localization.hpp"
#include "cinf/serialize.hpp"

namespace cinf {

ZerosetFilter hat(const Ideal& I) { return {I.sigma(), I.sigma_structured()}; }

Verdict filter_member(const Term& g, const ZerosetFilter& F, const Box& region,
                      const VerifierOptions& options) {
  return zeroset_included(F.structured, g, region, options);
}

const char* to_string(Adjunction a) {
  switch (a) {
    case Adjunction::BothHold: return "both-hold";
    case Adjunction::BothFail: return "both-fail";
    case Adjunction::Unknown: return "unknown";
    case Adjunction::Violation: return "violation";
  }
  return "?";
}

AdjunctionReport adjunction_check(const Ideal& I, const ZerosetFilter& F, const Box& region,
                                  const VerifierOptions& options) {
  AdjunctionReport r;
  r.left = zeroset_included(F.structured, I.sigma_structured(), region, options);
  bool any_unknown = false;
  bool any_refuted = false;
  for (const auto& g : I.generators()) {
    r.right.push_back(filter_member(g, F, region, options));
    any_refuted = any_refuted || r.right.back().refuted();
    any_unknown = any_unknown || r.right.back().outcome == Outcome::Unknown;
  }
  r.right_outcome = any_refuted ? Outcome::Refuted
                    : any_unknown ? Outcome::Unknown
                                  : Outcome::Proved;
  Outcome left = r.left.outcome;
  if (left == Outcome::Unknown || r.right_outcome == Outcome::Unknown) {
    r.result = Adjunction::Unknown;
  } else if (left != r.right_outcome) {
    r.result = Adjunction::Violation;
  } else {
    r.result = left == Outcome::Proved ? Adjunction::BothHold : Adjunction::BothFail;
  }
  return r;
}

ZerosetFilter radical_product_vs_intersection(const Ideal& I, const Ideal& J) {
  return {normalize(mul(I.sigma(), J.sigma())), mul(I.sigma_structured(), J.sigma_structured())};
}

Verdict intersection_member(const Term& g, const Ideal& I, const Ideal& J, const Box& region,
                            const VerifierOptions& options) {
  Verdict a = radical_member(g, I, region, options);
  Verdict b = radical_member(g, J, region, options);
  if (a.refuted() && b.refuted()) return point_less(*b.witness, *a.witness) ? b : a;
  if (a.refuted()) return a;
  if (b.refuted()) return b;
  if (a.outcome == Outcome::Unknown) return a;
  if (b.outcome == Outcome::Unknown) return b;
  a.stats.cells += b.stats.cells;
  a.stats.pieces += b.stats.pieces;
  a.stats.max_depth = std::max(a.stats.max_depth, b.stats.max_depth);
  a.reason = "member of both radicals";
  return a;
}

const char* to_string(Split s) {
  switch (s) {
    case Split::Left: return "left";
    case Split::Right: return "right";
    case Split::Both: return "both";
    case Split::Unknown: return "unknown";
  }
  return "?";
}

Split prime_filter_split(const ZerosetFilter& F, const Term& f, const Term& g, const Box& region,
                         const VerifierOptions& options) {
  Verdict pre = filter_member(mul(f, g), F, region, options);
  if (pre.refuted())
    throw Error(ErrorCode::Malformed,
                "Z(" + to_infix(mul(f, g)) + ") is not in the filter", pre.witness);
  if (!pre.proved()) return Split::Unknown;
  bool left = filter_member(f, F, region, options).proved();
  bool right = filter_member(g, F, region, options).proved();
  if (left && right) return Split::Both;
  if (left) return Split::Left;
  if (right) return Split::Right;
  return Split::Unknown;
}

bool PointSpectra::consistent() const {
  if (in_D == Tri::Unknown || in_H_plus == Tri::Unknown || in_H_minus == Tri::Unknown)
    return true;
  bool d = in_D == Tri::Yes;
  bool h = in_H_plus == Tri::Yes || in_H_minus == Tri::Yes;
  return d == h;
}

PointSpectra point_spectra(const Point& x, const Term& a) {
  PointSpectra p;
  Tri zero = exact_zero_at(a, x);
  if (zero == Tri::Yes) {
    p.in_D = p.in_H_plus = p.in_H_minus = Tri::No;
    return p;
  }
  if (zero == Tri::No) p.in_D = Tri::Yes;
  if (auto s = sign_at(a, x)) {
    p.in_H_plus = *s > 0 ? Tri::Yes : Tri::No;
    p.in_H_minus = *s < 0 ? Tri::Yes : Tri::No;
  }
  return p;
}

const char* to_string(OrderClass c) {
  switch (c) {
    case OrderClass::Support: return "supp";
    case OrderClass::Positive: return "+";
    case OrderClass::Negative: return "-";
    case OrderClass::Unknown: return "unknown";
  }
  return "?";
}

OrderingReport unique_ordering_at_support(const Point& x, const std::vector<Term>& trials) {
  OrderingReport r;
  for (const auto& t : trials) {
    OrderingReport::Entry e{t, OrderClass::Unknown, 0};
    bool supp = exact_zero_at(t, x) == Tri::Yes;
    auto s = sign_at(t, x);
    bool pos = s && *s > 0;
    bool negv = false;
    if (auto sn = sign_at(neg(t), x)) negv = *sn > 0;
    e.holding = int(supp) + int(pos) + int(negv);
    if (e.holding == 0) {
      ++r.unknown;
    } else {
      e.cls = supp ? OrderClass::Support : pos ? OrderClass::Positive : OrderClass::Negative;
      if (e.holding == 1) ++r.forced;
      else ++r.violations;
    }
    r.entries.push_back(e);
  }
  return r;
}

RootEnclosure ivt_root(const Term& f, const std::string& v, const Rational& a, const Rational& b,
                       const Rational& tol, const VerifierOptions& options) {
  for (const auto& name : support(f))
    if (name != v)
      throw Error(ErrorCode::Malformed, "root finding needs a single variable; found " + name);
  if (!(a < b)) throw Error(ErrorCode::Malformed, "root interval needs a < b");
  if (tol <= 0) throw Error(ErrorCode::Malformed, "tolerance must be positive");
  auto at = [&](const Rational& q) { return sign_at(f, Point{{v, q}}); };
  auto sa = at(a);
  auto sb = at(b);
  if (!sa || !sb || *sa == 0 || *sb == 0 || *sa == *sb)
    throw Error(ErrorCode::NoSignChange,
                "no certified sign change of " + to_infix(f) + " on [" + to_string(a) + ", " +
                    to_string(b) + "]");

  ZerosetQuery q;
  q.constraint = constant(0);
  q.predicate = Predicate::GreaterZero;
  Term df = differentiate(f, v);
  q.subject = add(pow(f, 2), pow(df, 2));
  q.region = Box({{v, Range{a, b}}});
  q.options = options;
  Verdict reg = prove_on_zeroset(q);
  if (!reg.proved())
    throw Error(ErrorCode::RegularityUnknown,
                "could not certify f^2 + f'^2 > 0 on the interval: " +
                    (reg.refuted() ? "fails at " + to_string(*reg.witness) : reg.reason));

  Rational lo = a, hi = b;
  int slo = *sa;
  while (hi - lo > tol) {
    Rational w = hi - lo;
    std::optional<int> s;
    Rational mid;
    for (Rational frac : {Rational(1, 2), Rational(7, 16), Rational(9, 16), Rational(3, 8)}) {
      mid = lo + w * frac;
      s = at(mid);
      if (s) break;
    }
    if (!s)
      throw Error(ErrorCode::RegularityUnknown,
                  "sign undecided near " + to_string(lo) + " at the highest precision");
    if (*s == 0) return {mid, mid};
    if (*s == slo) lo = mid;
    else hi = mid;
  }
  return {lo, hi};
}

nlohmann::json to_json(const PointSpectra& p) {
  return {{"in_D", to_string(p.in_D)},
          {"in_H_plus", to_string(p.in_H_plus)},
          {"in_H_minus", to_string(p.in_H_minus)},
          {"consistent", p.consistent()}};
}

nlohmann::json to_json(const OrderingReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"trial", term_to_json(e.trial)}, {"class", to_string(e.cls)}});
  return {{"entries", entries},
          {"forced", r.forced},
          {"unknown", r.unknown},
          {"violations", r.violations}};
}

nlohmann::json to_json(const RootEnclosure& r) {
  return {{"lo", to_string(r.lo)},
          {"hi", to_string(r.hi)},
          {"lo_approx", to_double(r.lo)},
          {"hi_approx", to_double(r.hi)}};
}

}  // namespace cinf
