#include "cinf/box.hpp"

#include <sstream>

#include "cinf/errors.hpp"

namespace cinf {

Box::Box(std::map<std::string, Range> ranges) : ranges_(std::move(ranges)) {
  for (const auto& [v, r] : ranges_)
    if (r.lo > r.hi) throw Error(ErrorCode::Malformed, "box range for " + v + " has lo > hi");
}

Box Box::uniform(const std::set<std::string>& vars, const Rational& lo, const Rational& hi) {
  std::map<std::string, Range> m;
  for (const auto& v : vars) m.emplace(v, Range{lo, hi});
  return Box(std::move(m));
}

Box Box::at(const Point& p) {
  std::map<std::string, Range> m;
  for (const auto& [v, x] : p) m.emplace(v, Range{x, x});
  return Box(std::move(m));
}

const Range& Box::range(const std::string& v) const {
  auto it = ranges_.find(v);
  if (it == ranges_.end()) throw Error(ErrorCode::Malformed, "variable " + v + " not in box");
  return it->second;
}

void Box::set(const std::string& v, Range r) {
  if (r.lo > r.hi) throw Error(ErrorCode::Malformed, "box range for " + v + " has lo > hi");
  ranges_[v] = std::move(r);
}

std::set<std::string> Box::variables() const {
  std::set<std::string> out;
  for (const auto& [v, _] : ranges_) out.insert(v);
  return out;
}

bool Box::covers(const std::set<std::string>& vars) const {
  for (const auto& v : vars)
    if (!has(v)) return false;
  return true;
}

bool Box::contains(const Point& p) const {
  for (const auto& [v, r] : ranges_) {
    auto it = p.find(v);
    if (it == p.end() || !r.contains(it->second)) return false;
  }
  return true;
}

bool Box::contains(const Box& inner) const {
  for (const auto& [v, r] : inner.ranges_) {
    auto it = ranges_.find(v);
    if (it == ranges_.end()) return false;
    if (r.lo < it->second.lo || r.hi > it->second.hi) return false;
  }
  return true;
}

bool Box::is_point() const {
  for (const auto& [_, r] : ranges_)
    if (r.lo != r.hi) return false;
  return true;
}

Point Box::center() const {
  Point p;
  for (const auto& [v, r] : ranges_) p.emplace(v, r.center());
  return p;
}

Rational Box::max_width() const {
  Rational w = 0;
  for (const auto& [_, r] : ranges_)
    if (r.width() > w) w = r.width();
  return w;
}

std::pair<Box, Box> Box::bisect() const {
  const std::string* widest = nullptr;
  Rational best = -1;
  for (const auto& [v, r] : ranges_) {
    if (r.width() > best) {
      best = r.width();
      widest = &v;
    }
  }
  Box left = *this, right = *this;
  if (widest == nullptr) return {left, right};
  const Range& r = ranges_.at(*widest);
  Rational mid = r.center();
  left.ranges_[*widest].hi = mid;
  right.ranges_[*widest].lo = mid;
  return {left, right};
}

Box Box::project(const std::set<std::string>& vars) const {
  std::map<std::string, Range> m;
  for (const auto& v : vars)
    if (auto it = ranges_.find(v); it != ranges_.end()) m.emplace(v, it->second);
  return Box(std::move(m));
}

Box Box::extended(const std::set<std::string>& vars, const Range& fill) const {
  Box out = *this;
  for (const auto& v : vars)
    if (!out.has(v)) out.ranges_.emplace(v, fill);
  return out;
}

std::string Box::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, r] : ranges_) {
    if (!first) os << ", ";
    first = false;
    os << v << ":[" << to_string(r.lo) << "," << to_string(r.hi) << "]";
  }
  return os.str();
}

std::string to_string(const Point& p) {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (const auto& [v, x] : p) {
    if (!first) os << ", ";
    first = false;
    os << v << "=" << to_string(x);
  }
  os << ")";
  return os.str();
}

bool point_less(const Point& a, const Point& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return a.size() < b.size();
}

}  // namespace cinf
