#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cinf/box.hpp"
#include "cinf/certificates.hpp"
#include "cinf/parser.hpp"
#include "cinf/smooth_ring.hpp"

namespace cinf {

/// Exit codes of the three-valued command language.
enum ExitCode : int { kProved = 0, kRefuted = 1, kUnknown = 2, kError = 3 };

struct Config {
  Range default_region{Rational(-2), Rational(2)};
  unsigned depth = 40;
  std::size_t cell_budget = 1000000;
  std::vector<mpfr_prec_t> precisions{53, 113, 256};
  unsigned workers = 1;
  bool assume_global = false;

  /// Keys: default-region, depth, cell-budget, precision-schedule, workers.
  void apply_json(const nlohmann::json& j);
  /// CINF_REGION, CINF_DEPTH, CINF_BUDGET, CINF_PRECISION, CINF_WORKERS.
  void apply_env();
  nlohmann::json to_json() const;
  VerifierOptions verifier() const;
};

/// "[a,b]" or "x:[a,b],y:[c,d]".
Range parse_range(const std::string& text);
std::map<std::string, Range> parse_region(const std::string& text);
/// "x=0,y=1/2".
Point parse_point(const std::string& text);
/// "0", "<>", "<g1, g2, ...>".
Ideal parse_ideal_literal(const std::string& text, const TermEnv& env);

/// Splits a command line on top-level whitespace; quotes group words.
std::vector<std::string> tokenize(const std::string& line);

struct CommandResult {
  int exit_code = kProved;
  std::string text;
  nlohmann::json artifact;
};

/// Named terms, ideals and certificates plus configuration.
class Session {
 public:
  Config config;

  CommandResult execute(const std::vector<std::string>& tokens);
  CommandResult execute_line(const std::string& line) { return execute(tokenize(line)); }

  const TermEnv& terms() const { return terms_; }
  const std::map<std::string, Ideal>& ideals() const { return ideals_; }
  const std::map<std::string, nlohmann::json>& certificates() const { return certificates_; }

  nlohmann::json to_json() const;
  static Session from_json(const nlohmann::json& j);
  void save(const std::string& path) const;
  void load(const std::string& path);

 private:
  CommandResult run(const std::vector<std::string>& tokens);

  TermEnv terms_;
  std::map<std::string, Ideal> ideals_;
  std::map<std::string, nlohmann::json> certificates_;
};

}  // namespace cinf
