#pragma once

// Game files, per-theory analysis reports and the reproduction table behind
// the nlgames command-line tool.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlgames/games.hpp"
#include "nlgames/quantum.hpp"

namespace nlgames {

inline constexpr int kReportSchemaVersion = 1;

// Thrown for malformed game files or inline measurement lists.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedGame {
  std::string name;
  Game game;
  std::optional<XorGameSpec> xor_spec;
};

// Schema:
//   {"name": "...", "parties": 3, "settings": 2, "outcomes": 2,
//    "predicate": {"type": "xor", "f": [..per setting index..]}
//               | {"type": "explicit", "winning": [[outcome, setting], ...]},
//    "distribution": "uniform" | [..per setting index..]}
// In explicit predicates, outcome and setting are either flat indices or
// per-party arrays. Everything except "predicate" is optional; "parties"
// defaults to 2, settings and outcomes to 2.
LoadedGame parse_game(const nlohmann::json& doc);
LoadedGame load_game_file(const std::string& path);

struct AnalyzeOptions {
  std::uint64_t seed = 42;
  int restarts = 100;
  int threads = 1;
  std::vector<std::string> states;  // empty: ghz,w for 3 parties, bell for 2
  bool timings = false;
};

struct QuantumEntry {
  std::string state;
  double value = 0.0;                    // winning probability
  std::optional<double> operator_value;  // <S> for uniform XOR games
  OptimizationResult optimization;
};

struct AnalysisReport {
  std::string game;
  Scenario scenario;
  double classical = 0.0;
  std::vector<int> classical_strategy;
  std::optional<double> classical_operator;
  std::vector<QuantumEntry> quantum;
  double no_signaling = 0.0;
  int lp_pivots = 0;
  double lp_complementary_slackness = 0.0;
  std::vector<std::pair<std::string, double>> stage_seconds;  // only filled with timings on
};

// Throws InvariantViolation if classical <= quantum <= no-signaling + 1e-9
// fails for any state.
AnalysisReport analyze(const LoadedGame& game, const AnalyzeOptions& opts);

nlohmann::ordered_json report_to_json(const AnalysisReport& report);
std::string report_to_csv(const AnalysisReport& report);

struct ReproRow {
  std::string game;
  std::string theory;
  std::string state;     // "-" when not applicable
  std::string quantity;  // "P", "S" or "zeta"
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

std::vector<ReproRow> reproduce(const OptimizationConfig& config);
nlohmann::ordered_json repro_to_json(const std::vector<ReproRow>& rows);
std::string repro_to_csv(const std::vector<ReproRow>& rows);

// Inline measurement list for the zeta command:
//   [{"p": 0.5, "theta": 0, "phi": 0, "x": 0}, ...]
nlohmann::ordered_json zeta_report(const nlohmann::json& measurements);

}  // namespace nlgames
