// nlgames: classical / quantum / no-signaling values of nonlocal games.
//
//   nlgames analyze <game.json> [--seed N] [--restarts N] [--states ghz,w]
//                               [--format json|csv] [--out path] [--timings]
//   nlgames reproduce [--seed N] [--restarts N] [--format json|csv] [--out path]
//   nlgames zeta --measurements '[{"p":0.5,"theta":0,"phi":0,"x":0}, ...]'
//
// Exit codes: 0 ok, 1 reproduction mismatch, 2 parse/usage error,
// 3 budget exceeded, 4 internal invariant violation.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "nlgames/errors.hpp"
#include "nlgames/report.hpp"

namespace {

enum Exit { kOk = 0, kMismatch = 1, kParse = 2, kBudget = 3, kInvariant = 4 };

// Writes the whole document at once so a failure never leaves a partial report.
int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return kOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "nlgames: cannot write " << out_path << "\n";
    return kParse;
  }
  out << text;
  return kOk;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical, quantum and no-signaling values of nonlocal games"};
  app.require_subcommand(1);

  std::uint64_t seed = 42;
  int restarts = 100;
  int threads = 1;
  std::string format = "json";
  std::string out_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Optimizer seed")->capture_default_str();
    cmd->add_option("--restarts", restarts, "Nelder-Mead restarts per optimization")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--threads", threads, "Worker threads for optimizer restarts (0 = hardware)")->capture_default_str();
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    cmd->add_option("--out", out_path, "Write output to this file instead of stdout");
  };

  auto* analyze = app.add_subcommand("analyze", "Analyze a game file under all three theories");
  std::string game_file;
  std::string states;
  bool timings = false;
  analyze->add_option("game", game_file, "Game definition (JSON)")->required();
  analyze->add_option("--states", states, "Comma-separated states: ghz, w, bell");
  analyze->add_flag("--timings", timings, "Include wall time per stage (output no longer reproducible)");
  add_common(analyze);

  auto* repro = app.add_subcommand("reproduce", "Recompute every reference value and compare");
  add_common(repro);

  auto* zeta = app.add_subcommand("zeta", "Fine-grained uncertainty bound for a qubit");
  std::string measurements;
  zeta->add_option("--measurements", measurements, "Inline JSON list of {p, theta, phi, x}")->required();
  zeta->add_option("--out", out_path, "Write output to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }
  if (threads == 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  try {
    if (*analyze) {
      nlgames::AnalyzeOptions opts{seed, restarts, threads, split_csv(states), timings};
      const auto loaded = nlgames::load_game_file(game_file);
      const auto report = nlgames::analyze(loaded, opts);
      return emit(format == "csv" ? nlgames::report_to_csv(report) : nlgames::report_to_json(report).dump(2) + "\n",
                  out_path);
    }
    if (*repro) {
      const nlgames::OptimizationConfig cfg{restarts, seed, 2000, 1e-10, threads};
      const auto rows = nlgames::reproduce(cfg);
      const int rc = emit(format == "csv" ? nlgames::repro_to_csv(rows) : nlgames::repro_to_json(rows).dump(2) + "\n",
                          out_path);
      if (rc != kOk) return rc;
      for (const auto& r : rows)
        if (!r.pass) return kMismatch;
      return kOk;
    }
    if (*zeta) {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(measurements);
      } catch (const nlohmann::json::parse_error& e) {
        throw nlgames::ParseError(e.what());
      }
      return emit(nlgames::zeta_report(doc).dump(2) + "\n", out_path);
    }
  } catch (const nlgames::ParseError& e) {
    std::cerr << "nlgames: " << e.what() << "\n";
    return kParse;
  } catch (const nlgames::InvalidArgument& e) {
    std::cerr << "nlgames: " << e.what() << "\n";
    return kParse;
  } catch (const nlgames::BudgetExceeded& e) {
    std::cerr << "nlgames: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "nlgames: internal error: " << e.what() << "\n";
    return kInvariant;
  }
  return kOk;
}
