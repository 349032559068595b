#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cinf/smooth_ring.hpp"
#include "cinf/term_calculus.hpp"
#include "cinf/verifier.hpp"

namespace cinf {

/// Principal filter {Z : Z contains Z(generator)}.
struct ZerosetFilter {
  Term generator;
  Term structured;  // same zeroset, shape kept for the verifier

  static ZerosetFilter of(const Term& b) { return {b, b}; }
};

ZerosetFilter hat(const Ideal& I);

/// Z(g) belongs to the filter: Z(g) contains Z(generator).
Verdict filter_member(const Term& g, const ZerosetFilter& F, const Box& region,
                      const VerifierOptions& options = {});

enum class Adjunction { BothHold, BothFail, Unknown, Violation };
const char* to_string(Adjunction a);

struct AdjunctionReport {
  Adjunction result = Adjunction::Unknown;
  Verdict left;                  // hat(I) within F
  std::vector<Verdict> right;    // each generator of I in the dual of F
  Outcome right_outcome = Outcome::Unknown;
};

AdjunctionReport adjunction_check(const Ideal& I, const ZerosetFilter& F, const Box& region,
                                  const VerifierOptions& options = {});

/// Filter generated by sigma(I) * sigma(J); both the product and the
/// intersection radicals correspond to it.
ZerosetFilter radical_product_vs_intersection(const Ideal& I, const Ideal& J);

/// g in the radical of the intersection: g in both radicals.
Verdict intersection_member(const Term& g, const Ideal& I, const Ideal& J, const Box& region,
                            const VerifierOptions& options = {});

enum class Split { Left, Right, Both, Unknown };
const char* to_string(Split s);

Split prime_filter_split(const ZerosetFilter& F, const Term& f, const Term& g, const Box& region,
                         const VerifierOptions& options = {});

struct PointSpectra {
  Tri in_D = Tri::Unknown;        // a(x) != 0
  Tri in_H_plus = Tri::Unknown;   // a(x) > 0
  Tri in_H_minus = Tri::Unknown;  // a(x) < 0

  /// in_D <=> in_H_plus or in_H_minus, whenever all three are decided.
  bool consistent() const;
};

PointSpectra point_spectra(const Point& x, const Term& a);

enum class OrderClass { Support, Positive, Negative, Unknown };
const char* to_string(OrderClass c);

struct OrderingReport {
  struct Entry {
    Term trial;
    OrderClass cls = OrderClass::Unknown;
    int holding = 0;  // how many of the three classes independently hold
  };
  std::vector<Entry> entries;
  std::size_t forced = 0;
  std::size_t unknown = 0;
  std::size_t violations = 0;
};

OrderingReport unique_ordering_at_support(const Point& x, const std::vector<Term>& trials);

struct RootEnclosure {
  Rational lo;
  Rational hi;
  Rational width() const { return hi - lo; }
};

/// Certified bisection for a sign change of f on [a, b] in the variable v.
RootEnclosure ivt_root(const Term& f, const std::string& v, const Rational& a, const Rational& b,
                       const Rational& tol, const VerifierOptions& options = {});

nlohmann::json to_json(const PointSpectra& p);
nlohmann::json to_json(const OrderingReport& r);
nlohmann::json to_json(const RootEnclosure& r);

}  // namespace cinf
