#pragma once

#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cinf/term.hpp"

namespace cinf {

/// C-infinity functions of a variable universe; elements have finite support.
class FreeRing {
 public:
  FreeRing() = default;
  explicit FreeRing(std::set<std::string> variables) : vars_(std::move(variables)) {}

  const std::set<std::string>& variables() const { return vars_; }
  void adjoin(const std::string& v) { vars_.insert(v); }
  bool owns(const Term& t) const;
  /// First name prefix1, prefix2, ... absent from the universe and `avoid`.
  std::string fresh(const std::string& prefix, const std::set<std::string>& avoid = {}) const;

 private:
  std::set<std::string> vars_;
};

/// Finitely generated ideal, read up to its C-infinity radical.
class Ideal {
 public:
  Ideal() = default;
  explicit Ideal(std::vector<Term> generators);

  const std::vector<Term>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  /// Normalized sum of squares of the generators; 0 for the zero ideal.
  const Term& sigma() const { return sigma_; }
  /// Same zeroset as sigma() but keeps the sum-of-squares shape, which the
  /// zeroset decomposition exploits.
  const Term& sigma_structured() const { return structured_; }
  std::set<std::string> support() const;

  /// Sound syntactic test that t lies in the ideal (sums of multiples of
  /// generators, sigma itself).
  bool contains_syntactically(const Term& t) const;

  std::string str() const;
  bool operator==(const Ideal& o) const;
  bool operator!=(const Ideal& o) const { return !(*this == o); }

 private:
  std::vector<Term> gens_;
  std::vector<Term> normal_;
  Term sigma_;
  Term structured_;
};

Term sigma(const Ideal& I);

/// Generators of I supported in `vars`.
Ideal pullback_ideal(const Ideal& I, const std::set<std::string>& vars);

/// f + I. Arithmetic requires a common ideal.
class Coset {
 public:
  Coset(Term rep, Ideal ideal);
  const Term& rep() const { return rep_; }
  const Ideal& ideal() const { return ideal_; }

  Coset operator+(const Coset& o) const;
  Coset operator-(const Coset& o) const;
  Coset operator*(const Coset& o) const;
  Coset operator-() const;

 private:
  void require_same(const Coset& o) const;
  Term rep_;
  Ideal ideal_;
};

/// C-infinity(R^E) / I with the listed variables.
struct Presentation {
  std::vector<std::string> variables;
  Ideal ideal;
};

nlohmann::json to_json(const Presentation& p);
Presentation presentation_from_json(const nlohmann::json& j);

}  // namespace cinf
