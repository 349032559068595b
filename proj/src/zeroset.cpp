#include "cinf/polynomial.hpp"
#include "cinf/term_calculus.hpp"
#include "cinf/verifier.hpp"

namespace cinf {

namespace {

using Pieces = std::vector<ZeroPiece>;

std::optional<ZeroPiece> intersect(const ZeroPiece& a, const ZeroPiece& b) {
  ZeroPiece out = a;
  for (const auto& [v, q] : b.assignment) {
    auto it = out.assignment.find(v);
    if (it == out.assignment.end()) out.assignment.emplace(v, q);
    else if (it->second != q) return std::nullopt;
  }
  out.residual.insert(out.residual.end(), b.residual.begin(), b.residual.end());
  return out;
}

std::optional<Pieces> decompose(const Term& t, std::size_t cap, bool retry_normal);

std::optional<Pieces> decompose_sum(const Term& t, std::size_t cap) {
  for (const auto& c : t.children())
    if (!structurally_nonnegative(c)) return std::nullopt;
  Pieces acc{ZeroPiece{}};
  for (const auto& c : t.children()) {
    auto part = decompose(c, cap, true);
    if (!part) return std::nullopt;
    Pieces next;
    for (const auto& a : acc)
      for (const auto& b : *part) {
        if (auto m = intersect(a, b)) next.push_back(std::move(*m));
        if (next.size() > cap) return std::nullopt;
      }
    acc = std::move(next);
    if (acc.empty()) break;
  }
  return acc;
}

std::optional<Pieces> decompose(const Term& t, std::size_t cap, bool retry_normal) {
  switch (t.kind()) {
    case Kind::Const:
      if (t.value() == 0) return Pieces{ZeroPiece{}};
      return Pieces{};
    case Kind::Var: return Pieces{ZeroPiece{{{t.name(), Rational(0)}}, {}}};
    case Kind::Exp:
    case Kind::PSqrt:
    case Kind::PInv: return Pieces{};
    case Kind::Neg:
    case Kind::Atan:
    case Kind::Tanh: return decompose(t.child(0), cap, true);
    case Kind::PowNat:
      if (t.exponent() == 0) return Pieces{};
      return decompose(t.child(0), cap, true);
    case Kind::Mul: {
      Pieces acc;
      for (const auto& c : t.children()) {
        auto part = decompose(c, cap, true);
        if (!part) return std::nullopt;
        for (auto& p : *part) acc.push_back(std::move(p));
        if (acc.size() > cap) return std::nullopt;
      }
      return acc;
    }
    default: break;
  }
  if (auto root = affine_root(t)) return Pieces{ZeroPiece{{{root->first, root->second}}, {}}};
  if (t.kind() == Kind::Add)
    if (auto p = decompose_sum(t, cap)) return p;
  if (retry_normal) {
    Term n = normalize(t);
    if (n != t) return decompose(n, cap, false);
  }
  return Pieces{ZeroPiece{{}, {t}}};
}

}  // namespace

std::optional<std::vector<ZeroPiece>> decompose_zeroset(const Term& phi, std::size_t cap) {
  return decompose(phi, cap, true);
}

}  // namespace cinf
