#include "cinf/verifier.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "cinf/errors.hpp"
#include "cinf/polynomial.hpp"
#include "cinf/serialize.hpp"
#include "cinf/term_calculus.hpp"

namespace cinf {

const char* to_string(Predicate p) {
  switch (p) {
    case Predicate::GreaterZero: return "GreaterZero";
    case Predicate::NonZero: return "NonZero";
    case Predicate::EqualsZero: return "EqualsZero";
  }
  return "?";
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Proved: return "Proved";
    case Outcome::Refuted: return "Refuted";
    case Outcome::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

// Cells narrower than this retry at higher precision before splitting.
const Rational kEscalationWidth(1, 1 << 20);

struct Refutation {
  bool strict = false;
};

/// Checks whether x lies in the zeroset piece and violates the predicate.
std::optional<Refutation> refutes_at(const std::vector<Term>& residual, Predicate pred,
                                     const Term& f, const Point& x,
                                     const std::vector<mpfr_prec_t>& precs) {
  for (const auto& r : residual)
    if (exact_zero_at(r, x) != Tri::Yes) return std::nullopt;
  switch (pred) {
    case Predicate::GreaterZero: {
      auto s = sign_at(f, x, precs);
      if (!s || *s > 0) return std::nullopt;
      return Refutation{*s < 0};
    }
    case Predicate::NonZero:
      if (exact_zero_at(f, x) == Tri::Yes) return Refutation{false};
      return std::nullopt;
    case Predicate::EqualsZero:
      if (exact_zero_at(f, x) == Tri::No) return Refutation{true};
      return std::nullopt;
  }
  return std::nullopt;
}

enum class CellStatus { Pruned, Proved, Undecided };

struct CellResult {
  CellStatus status = CellStatus::Undecided;
  std::optional<Refutation> refutation;
  Point center;
  std::exception_ptr error;
};

struct Cell {
  Box box;
  unsigned depth = 0;
};

struct PieceResult {
  Outcome outcome = Outcome::Proved;
  std::optional<Point> witness;
  bool strict = false;
  std::string reason;
  std::size_t cells = 0;
  unsigned depth = 0;
};

class PieceSolver {
 public:
  PieceSolver(std::vector<Term> residual, Predicate pred, Term f, const VerifierOptions& opt)
      : residual_(std::move(residual)), pred_(pred), f_(std::move(f)), opt_(opt) {}

  PieceResult run(const Box& free) {
    if (free.empty_dims()) return point_case();
    return branch_and_prune(free);
  }

 private:
  PieceResult point_case() {
    PieceResult out;
    Point empty;
    for (const auto& r : residual_) {
      Tri z = exact_zero_at(r, empty);
      if (z == Tri::No) return out;
      if (z == Tri::Unknown) {
        out.outcome = Outcome::Unknown;
        out.reason = "cannot decide membership of the point in the zeroset";
        return out;
      }
    }
    auto refute = refutes_at({}, pred_, f_, empty, opt_.precisions);
    if (refute) {
      out.outcome = Outcome::Refuted;
      out.witness = empty;
      out.strict = refute->strict;
      return out;
    }
    bool holds = false;
    switch (pred_) {
      case Predicate::GreaterZero: holds = sign_at(f_, empty, opt_.precisions) == 1; break;
      case Predicate::NonZero: {
        auto s = sign_at(f_, empty, opt_.precisions);
        holds = s && *s != 0;
        break;
      }
      case Predicate::EqualsZero: holds = exact_zero_at(f_, empty) == Tri::Yes; break;
    }
    if (!holds) {
      out.outcome = Outcome::Unknown;
      out.reason = "sign undecided at the zeroset point";
    }
    return out;
  }

  CellStatus classify(const Box& box, mpfr_prec_t prec) const {
    for (const auto& r : residual_)
      if (eval_interval(r, box, prec).excludes_zero()) return CellStatus::Pruned;
    if (pred_ == Predicate::EqualsZero) return CellStatus::Undecided;
    Interval v = eval_interval(f_, box, prec);
    bool ok = pred_ == Predicate::GreaterZero ? v.positive() : v.excludes_zero();
    return ok ? CellStatus::Proved : CellStatus::Undecided;
  }

  CellResult process(const Cell& cell) const {
    CellResult res;
    try {
      bool fine = cell.box.max_width() <= kEscalationWidth || cell.depth >= opt_.max_depth;
      for (std::size_t i = 0; i < opt_.precisions.size(); ++i) {
        res.status = classify(cell.box, opt_.precisions[i]);
        if (res.status != CellStatus::Undecided || !fine) break;
      }
      if (res.status == CellStatus::Undecided) {
        res.center = cell.box.center();
        res.refutation = refutes_at(residual_, pred_, f_, res.center, opt_.precisions);
      }
    } catch (...) {
      res.error = std::current_exception();
    }
    return res;
  }

  std::vector<CellResult> process_level(const std::vector<Cell>& cells) const {
    std::vector<CellResult> out(cells.size());
    unsigned workers = std::max(1u, std::min<unsigned>(opt_.workers, cells.size()));
    if (workers == 1) {
      for (std::size_t i = 0; i < cells.size(); ++i) out[i] = process(cells[i]);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          for (std::size_t i = w; i < cells.size(); i += workers) out[i] = process(cells[i]);
        });
      for (auto& t : pool) t.join();
    }
    for (const auto& r : out)
      if (r.error) std::rethrow_exception(r.error);
    return out;
  }

  PieceResult branch_and_prune(const Box& root) {
    PieceResult out;
    std::vector<Cell> level{{root, 0}};
    std::optional<Point> nonstrict;
    std::optional<unsigned> nonstrict_level;
    bool exhausted_depth = false;
    bool exhausted_budget = false;
    unsigned depth = 0;
    while (!level.empty()) {
      if (out.cells + level.size() > opt_.cell_budget) {
        exhausted_budget = true;
        break;
      }
      auto results = process_level(level);
      out.cells += level.size();
      out.depth = depth;

      std::optional<Point> strict;
      for (const auto& r : results) {
        if (!r.refutation) continue;
        if (r.refutation->strict) {
          if (!strict || point_less(r.center, *strict)) strict = r.center;
        } else if (!nonstrict_level || *nonstrict_level == depth) {
          if (!nonstrict || point_less(r.center, *nonstrict)) nonstrict = r.center;
          nonstrict_level = depth;
        }
      }
      if (strict) {
        out.outcome = Outcome::Refuted;
        out.witness = strict;
        out.strict = true;
        return out;
      }
      if (nonstrict_level &&
          (pred_ == Predicate::NonZero || depth >= *nonstrict_level + opt_.lookahead))
        break;

      std::vector<Cell> next;
      for (std::size_t i = 0; i < level.size(); ++i) {
        if (results[i].status != CellStatus::Undecided) continue;
        if (level[i].depth >= opt_.max_depth) {
          exhausted_depth = true;
          continue;
        }
        auto [a, b] = level[i].box.bisect();
        next.push_back({std::move(a), level[i].depth + 1});
        next.push_back({std::move(b), level[i].depth + 1});
      }
      level = std::move(next);
      ++depth;
    }
    if (nonstrict) {
      out.outcome = Outcome::Refuted;
      out.witness = nonstrict;
      return out;
    }
    if (exhausted_budget) {
      out.outcome = Outcome::Unknown;
      out.reason = "cell budget exhausted";
    } else if (exhausted_depth) {
      out.outcome = Outcome::Unknown;
      out.reason = pred_ == Predicate::EqualsZero
                       ? "vanishing on a continuum needs a cofactor"
                       : "maximum depth reached";
    }
    return out;
  }

  std::vector<Term> residual_;
  Predicate pred_;
  Term f_;
  const VerifierOptions& opt_;
};

bool dominated(const Term& f, const Term& rho) {
  Term f2 = pow(f, 2);
  for (long c : {1L, 16L, 1024L}) {
    if (structurally_nonnegative(normalize(sub(mul(constant(c), rho), f2)))) return true;
    if (structurally_nonnegative(normalize(sub(mul(constant(c), pow(rho, 2)), f2)))) return true;
  }
  return false;
}

Term sum_of_squares(const std::vector<Term>& ts) {
  if (ts.size() == 1) return ts.front();
  std::vector<Term> sq;
  for (const auto& t : ts) sq.push_back(pow(t, 2));
  return add(std::move(sq));
}

Verdict proved(const Box& region, std::string reason) {
  Verdict v;
  v.outcome = Outcome::Proved;
  v.reason = std::move(reason);
  v.scope = ObligationScope::on_region(region);
  return v;
}

}  // namespace

Verdict prove_on_zeroset(const ZerosetQuery& q) {
  auto vars = support(q.constraint);
  for (const auto& v : support(q.subject)) vars.insert(v);
  if (!q.region.covers(vars))
    throw Error(ErrorCode::Malformed, "region " + q.region.str() + " does not cover the query");

  if (q.predicate == Predicate::EqualsZero) {
    if (identically_zero(q.subject)) return proved(q.region, "identically zero");
    if (q.cofactor && identically_zero(sub(q.subject, mul(*q.cofactor, q.constraint))))
      return proved(q.region, "cofactor");
    if (dominated(q.subject, q.constraint)) return proved(q.region, "domination");
  }

  auto pieces = decompose_zeroset(q.constraint);
  if (!pieces) pieces = std::vector<ZeroPiece>{ZeroPiece{{}, {q.constraint}}};

  Verdict verdict = proved(q.region, "all zeroset pieces verified");
  verdict.stats.pieces = pieces->size();
  std::optional<std::pair<bool, Point>> best;  // (strict, witness)
  std::string unknown_reason;

  for (const auto& piece : *pieces) {
    bool inside = true;
    for (const auto& [v, val] : piece.assignment)
      if (!q.region.range(v).contains(val)) inside = false;
    if (!inside) continue;

    std::vector<Term> residual;
    bool empty = false;
    for (const auto& r : piece.residual) {
      Term s = normalize(substitute(r, piece.assignment));
      if (s.is_const()) {
        if (!s.is_zero()) empty = true;
        continue;
      }
      residual.push_back(s);
    }
    if (empty) continue;
    Term f = substitute(q.subject, piece.assignment);
    if (q.predicate == Predicate::EqualsZero) {
      if (identically_zero(f)) continue;
      if (!residual.empty() && dominated(f, sum_of_squares(residual))) continue;
    }

    std::set<std::string> free_vars;
    for (const auto& r : residual)
      for (const auto& v : support(r)) free_vars.insert(v);
    for (const auto& v : support(f)) free_vars.insert(v);
    Box free = q.region.project(free_vars);

    PieceSolver solver(residual, q.predicate, f, q.options);
    PieceResult pr = solver.run(free);
    verdict.stats.cells += pr.cells;
    verdict.stats.max_depth = std::max(verdict.stats.max_depth, pr.depth);

    if (pr.outcome == Outcome::Refuted) {
      Point w = *pr.witness;
      for (const auto& [v, val] : piece.assignment) w[v] = val;
      for (const auto& v : vars)
        if (!w.count(v)) w[v] = q.region.range(v).center();
      if (!best || (pr.strict && !best->first) ||
          (pr.strict == best->first && point_less(w, best->second)))
        best = std::make_pair(pr.strict, w);
    } else if (pr.outcome == Outcome::Unknown && unknown_reason.empty()) {
      unknown_reason = pr.reason;
    }
  }

  if (best) {
    verdict.outcome = Outcome::Refuted;
    verdict.witness = best->second;
    verdict.reason = best->first ? "strict counterexample" : "counterexample on the boundary";
  } else if (!unknown_reason.empty()) {
    verdict.outcome = Outcome::Unknown;
    verdict.reason = unknown_reason;
  }
  return verdict;
}

Verdict zeroset_included(const Term& b, const Term& a, const Box& region,
                         const VerifierOptions& options) {
  ZerosetQuery q;
  q.constraint = b;
  q.predicate = Predicate::EqualsZero;
  q.subject = a;
  q.region = region;
  q.options = options;
  return prove_on_zeroset(q);
}

bool witness_valid(const ZerosetQuery& q, const Point& witness) {
  std::vector<mpfr_prec_t> top{q.options.precisions.empty() ? 256 : q.options.precisions.back()};
  return refutes_at({q.constraint}, q.predicate, q.subject, witness, top).has_value();
}

json to_json(const Verdict& v) {
  json j;
  j["outcome"] = to_string(v.outcome);
  j["witness"] = v.witness ? point_to_json(*v.witness) : json(nullptr);
  j["reason"] = v.reason;
  j["scope"] = scope_to_json(v.scope);
  j["stats"] = {{"cells", v.stats.cells},
                {"max_depth", v.stats.max_depth},
                {"pieces", v.stats.pieces}};
  return j;
}

json to_json(const ZerosetQuery& q, const Verdict& v) {
  json j = to_json(v);
  j["v"] = kSchemaVersion;
  j["constraint"] = term_to_json(q.constraint);
  j["predicate"] = {{"kind", to_string(q.predicate)}, {"term", term_to_json(q.subject)}};
  j["region"] = box_to_json(q.region);
  return j;
}

}  // namespace cinf
