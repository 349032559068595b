#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cinf/rational.hpp"

namespace cinf {

/// An exact point: variable name -> rational coordinate. Finite support.
using Point = std::map<std::string, Rational>;

struct Range {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  Rational center() const { return midpoint(lo, hi); }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool operator==(const Range& o) const { return lo == o.lo && hi == o.hi; }
};

/// Axis-aligned closed box with rational bounds, keyed by variable name.
class Box {
 public:
  Box() = default;
  explicit Box(std::map<std::string, Range> ranges);

  /// Same range on every listed variable.
  static Box uniform(const std::set<std::string>& vars, const Rational& lo, const Rational& hi);
  static Box at(const Point& p);

  const std::map<std::string, Range>& ranges() const { return ranges_; }
  bool has(const std::string& v) const { return ranges_.count(v) > 0; }
  const Range& range(const std::string& v) const;
  void set(const std::string& v, Range r);
  void erase(const std::string& v) { ranges_.erase(v); }

  std::set<std::string> variables() const;
  bool covers(const std::set<std::string>& vars) const;
  bool contains(const Point& p) const;
  bool contains(const Box& inner) const;
  bool is_point() const;
  bool empty_dims() const { return ranges_.empty(); }

  Point center() const;
  /// Bisects the widest coordinate; ties go to the smallest variable name.
  std::pair<Box, Box> bisect() const;
  Rational max_width() const;

  /// Restricts to the given variables (those present in the box).
  Box project(const std::set<std::string>& vars) const;
  /// Adds variables missing from this box using `fill`.
  Box extended(const std::set<std::string>& vars, const Range& fill) const;

  std::string str() const;
  bool operator==(const Box& o) const { return ranges_ == o.ranges_; }

 private:
  std::map<std::string, Range> ranges_;
};

std::string to_string(const Point& p);
/// Lexicographic order on points over the same variable set.
bool point_less(const Point& a, const Point& b);

}  // namespace cinf
