// Command-line front end for the certificate calculus.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "cinf/errors.hpp"
#include "cinf/serialize.hpp"
#include "cinf/session.hpp"

namespace {

int emit(const cinf::CommandResult& r, bool as_json, const std::string& out_path) {
  if (as_json && !r.artifact.is_null()) {
    std::cout << cinf::canonical_dump(r.artifact);
  } else {
    std::cout << r.text;
  }
  if (!out_path.empty() && !r.artifact.is_null()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: Io: cannot write " << out_path << "\n";
      return cinf::kError;
    }
    out << cinf::canonical_dump(r.artifact);
  }
  return r.exit_code;
}

int repl(cinf::Session& session, bool as_json) {
  std::string line;
  int last = cinf::kProved;
  const bool tty = isatty(0);
  while (true) {
    if (tty) std::cout << "cinf> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    if (line == "quit" || line == "exit") break;
    cinf::CommandResult r;
    try {
      r = session.execute_line(line);
    } catch (const cinf::Error& e) {
      r.exit_code = cinf::kError;
      r.text = std::string("error: ") + cinf::to_string(e.code()) + ": " + e.what() + "\n";
    }
    last = emit(r, as_json, "");
  }
  return last;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cinf: certificates for orders, units and ideals in smooth rings"};
  app.prefix_command();

  std::string region, precision, out_path, config_path, session_path;
  unsigned depth = 0, workers = 0;
  std::size_t budget = 0;
  bool assume_global = false, as_json = false;
  app.add_option("--region", region, "default range for every variable, e.g. [-2,2]");
  app.add_option("--depth", depth, "maximum subdivision depth");
  app.add_option("--budget", budget, "maximum number of cells per query");
  app.add_option("--precision", precision, "precision schedule in bits, e.g. 53,113,256");
  app.add_option("--workers", workers, "verifier worker threads");
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--session", session_path, "session file, loaded if present and saved after the command");
  app.add_option("--out", out_path, "write the JSON artifact to this file");
  app.add_flag("--assume-global", assume_global,
               "record undischarged positivity obligations as assumptions");
  app.add_flag("--json", as_json, "print the JSON artifact instead of text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : cinf::kError;
  }

  cinf::Session session;
  try {
    if (!session_path.empty() && std::filesystem::exists(session_path)) session.load(session_path);
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw cinf::Error(cinf::ErrorCode::Io, "cannot read " + config_path);
      session.config.apply_json(nlohmann::json::parse(in));
    }
    session.config.apply_env();
    if (!region.empty()) session.config.default_region = cinf::parse_range(region);
    if (depth) session.config.depth = depth;
    if (budget) session.config.cell_budget = budget;
    if (workers) session.config.workers = workers;
    if (!precision.empty()) {
      std::vector<mpfr_prec_t> ps;
      std::stringstream ss(precision);
      std::string part;
      while (std::getline(ss, part, ',')) ps.push_back(std::stol(part));
      if (ps.empty()) throw cinf::Error(cinf::ErrorCode::Malformed, "empty precision schedule");
      session.config.precisions = ps;
    }
    session.config.assume_global = assume_global;
  } catch (const cinf::Error& e) {
    std::cerr << "error: " << cinf::to_string(e.code()) << ": " << e.what() << "\n";
    return cinf::kError;
  } catch (const std::exception& e) {
    std::cerr << "error: Malformed: " << e.what() << "\n";
    return cinf::kError;
  }

  std::vector<std::string> command = app.remaining();
  if (command.empty()) return repl(session, as_json);

  cinf::CommandResult r = session.execute(command);
  int code = emit(r, as_json, out_path);
  if (!session_path.empty() && code != cinf::kError) {
    try {
      session.save(session_path);
    } catch (const cinf::Error& e) {
      std::cerr << "error: " << cinf::to_string(e.code()) << ": " << e.what() << "\n";
      return cinf::kError;
    }
  }
  return code;
}
