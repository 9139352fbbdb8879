#include "nlgames/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "nlgames/classical.hpp"
#include "nlgames/errors.hpp"
#include "nlgames/fur.hpp"
#include "nlgames/nosignal.hpp"

namespace nlgames {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int get_int(const json& doc, const char* key, int fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) throw ParseError(std::string("\"") + key + "\" must be an integer");
  return v.get<int>();
}

std::size_t index_from(const json& v, const Scenario& sc, bool is_setting) {
  if (v.is_number_unsigned()) {
    const auto idx = v.get<std::size_t>();
    if (idx >= (is_setting ? sc.n_setting_tuples() : sc.n_outcome_tuples())) throw ParseError("index out of range");
    return idx;
  }
  if (v.is_array()) {
    if (v.size() != static_cast<std::size_t>(sc.parties)) throw ParseError("per-party tuple has wrong length");
    std::vector<int> digits;
    for (const auto& d : v) {
      if (!d.is_number_unsigned()) throw ParseError("per-party tuple entries must be non-negative integers");
      const int x = d.get<int>();
      if (x >= (is_setting ? sc.settings : sc.outcomes)) throw ParseError("per-party tuple entry out of range");
      digits.push_back(x);
    }
    return is_setting ? sc.setting_index(digits) : sc.outcome_index(digits);
  }
  throw ParseError("winning entries must be indices or per-party arrays");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

LoadedGame parse_game(const json& doc) {
  try {
    if (!doc.is_object()) throw ParseError("game file must be a JSON object");
    const Scenario sc{get_int(doc, "parties", 2), get_int(doc, "settings", 2), get_int(doc, "outcomes", 2)};
    try {
      sc.validate();
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what());
    }
    const std::string name = doc.contains("name") ? doc.at("name").get<std::string>() : std::string("custom");

    std::vector<double> dist;
    if (!doc.contains("distribution") || doc.at("distribution") == "uniform") {
      dist = uniform_distribution(sc);
    } else if (doc.at("distribution").is_array()) {
      dist = doc.at("distribution").get<std::vector<double>>();
    } else {
      throw ParseError("\"distribution\" must be \"uniform\" or an array");
    }

    if (!doc.contains("predicate") || !doc.at("predicate").is_object()) throw ParseError("missing \"predicate\" object");
    const auto& pred = doc.at("predicate");
    const std::string type = pred.value("type", "");
    if (type == "xor") {
      if (sc.outcomes != 2) throw ParseError("xor predicates need binary outcomes");
      XorGameSpec spec{sc.parties, sc.settings, pred.at("f").get<std::vector<int>>(), dist, name};
      spec.validate();
      return LoadedGame{name, xor_to_game(spec), spec};
    }
    if (type == "explicit") {
      std::vector<int> table(sc.n_entries(), 0);
      for (const auto& pair : pred.at("winning")) {
        if (!pair.is_array() || pair.size() != 2) throw ParseError("winning entries must be [outcome, setting] pairs");
        const auto o = index_from(pair[0], sc, false);
        const auto s = index_from(pair[1], sc, true);
        table[s * sc.n_outcome_tuples() + o] = 1;
      }
      return LoadedGame{name, Game(sc, std::move(table), dist, name), std::nullopt};
    }
    throw ParseError("predicate type must be \"xor\" or \"explicit\"");
  } catch (const json::exception& e) {
    throw ParseError(std::string("game schema: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("game schema: ") + e.what());
  }
}

LoadedGame load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return parse_game(doc);
}

AnalysisReport analyze(const LoadedGame& loaded, const AnalyzeOptions& opts) {
  const Scenario& sc = loaded.game.scenario();
  AnalysisReport rep;
  rep.game = loaded.name;
  rep.scenario = sc;

  auto states = opts.states;
  if (states.empty()) {
    if (sc.parties == 3) states = {"ghz", "w"};
    if (sc.parties == 2) states = {"bell"};
  }
  std::vector<PureState> resolved;
  for (const auto& s : states) {
    auto st = named_state(s);
    if (st.parties() != sc.parties) throw InvalidArgument("state " + s + " does not match the game's party count");
    resolved.push_back(std::move(st));
  }

  auto t0 = std::chrono::steady_clock::now();
  const auto cl = classical_max(loaded.game);
  rep.classical = cl.value;
  rep.classical_strategy = cl.argmax.table;
  bool uniform = false;
  if (loaded.xor_spec) {
    uniform = loaded.xor_spec->setting_distribution == uniform_distribution(sc);
    if (uniform) rep.classical_operator = classical_operator_max(correlation_coefficients(*loaded.xor_spec));
  }
  rep.stage_seconds.emplace_back("classical", seconds_since(t0));

  const OptimizationConfig cfg{opts.restarts, opts.seed, 2000, 1e-10, opts.threads};
  for (std::size_t i = 0; i < resolved.size(); ++i) {
    t0 = std::chrono::steady_clock::now();
    QuantumEntry q;
    q.state = states[i];
    q.optimization = loaded.xor_spec ? optimize_game(*loaded.xor_spec, resolved[i], cfg)
                                     : optimize_game(loaded.game, resolved[i], cfg);
    q.value = q.optimization.best_value;
    if (uniform) q.operator_value = operator_expectation(*loaded.xor_spec, resolved[i], q.optimization.best_setup);
    rep.quantum.push_back(std::move(q));
    rep.stage_seconds.emplace_back("quantum_" + states[i], seconds_since(t0));
  }

  t0 = std::chrono::steady_clock::now();
  const auto ns = ns_max(loaded.game);
  rep.no_signaling = ns.value;
  rep.lp_pivots = ns.lp.pivots;
  rep.lp_complementary_slackness = ns.lp.complementary_slackness;
  rep.stage_seconds.emplace_back("no_signaling", seconds_since(t0));
  if (!opts.timings) rep.stage_seconds.clear();

  constexpr double slack = 1e-9;
  for (const auto& q : rep.quantum) {
    if (q.value < rep.classical - slack || q.value > rep.no_signaling + slack) {
      throw InvariantViolation("theory hierarchy classical <= quantum <= no-signaling violated for state " + q.state);
    }
  }
  return rep;
}

ordered_json report_to_json(const AnalysisReport& rep) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["game"] = rep.game;
  j["parties"] = rep.scenario.parties;
  j["settings"] = rep.scenario.settings;
  j["outcomes"] = rep.scenario.outcomes;

  ordered_json cl;
  cl["value"] = rep.classical;
  cl["strategy"] = rep.classical_strategy;
  if (rep.classical_operator) cl["operator_value"] = *rep.classical_operator;
  j["classical"] = cl;

  ordered_json qs = ordered_json::array();
  for (const auto& q : rep.quantum) {
    ordered_json e;
    e["state"] = q.state;
    e["value"] = q.value;
    if (q.operator_value) e["operator_value"] = *q.operator_value;
    ordered_json angles = ordered_json::array();
    for (const auto& a : q.optimization.best_setup.all()) angles.push_back({a.theta, a.phi});
    e["angles"] = angles;
    e["restarts"] = q.optimization.restarts_run;
    e["best_restart"] = q.optimization.best_restart;
    e["stationarity_residual"] = q.optimization.stationarity_residual;
    qs.push_back(e);
  }
  j["quantum"] = qs;

  ordered_json ns;
  ns["value"] = rep.no_signaling;
  ns["lp_pivots"] = rep.lp_pivots;
  ns["complementary_slackness"] = rep.lp_complementary_slackness;
  j["no_signaling"] = ns;

  if (!rep.stage_seconds.empty()) {
    ordered_json t;
    for (const auto& [stage, secs] : rep.stage_seconds) t[stage] = secs;
    j["wall_seconds"] = t;
  }
  return j;
}

std::string report_to_csv(const AnalysisReport& rep) {
  std::ostringstream out;
  out << "game,theory,state,value,operator_value\n";
  out << rep.game << ",classical,-," << fmt_double(rep.classical) << ","
      << (rep.classical_operator ? fmt_double(*rep.classical_operator) : "") << "\n";
  for (const auto& q : rep.quantum)
    out << rep.game << ",quantum," << q.state << "," << fmt_double(q.value) << ","
        << (q.operator_value ? fmt_double(*q.operator_value) : "") << "\n";
  out << rep.game << ",no_signaling,-," << fmt_double(rep.no_signaling) << ",\n";
  return out.str();
}

std::vector<ReproRow> reproduce(const OptimizationConfig& config) {
  std::vector<ReproRow> rows;
  auto add = [&](std::string game, std::string theory, std::string state, std::string quantity, double computed,
                 double expected, double tol) {
    rows.push_back({std::move(game), std::move(theory), std::move(state), std::move(quantity), computed, expected, tol,
                    std::abs(computed - expected) <= tol});
  };
  const double tsirelson_p = 0.5 + 0.5 / std::numbers::sqrt2;

  const auto chsh = builtin_game("chsh");
  const auto chsh_game = xor_to_game(chsh);
  add("chsh", "classical", "-", "P", classical_max(chsh_game).value, 0.75, 0.0);
  add("chsh", "quantum", "bell", "P", optimize_game(chsh, chsh_optimal_state(), config).best_value, tsirelson_p, 1e-4);
  add("chsh", "no_signaling", "-", "P", ns_max(chsh_game).value, 1.0, 1e-9);

  struct Target {
    const char* game;
    double classical_p;
    double classical_s;
    double ghz_s;
    double ghz_tol;
    double w_s;
    double w_tol;
  };
  const Target targets[] = {
      {"svetlichny", 0.75, 4.0, 4.0 * std::numbers::sqrt2, 1e-3, 4.354, 5e-3},
      {"mermin_a", 0.75, 4.0, 4.0, 1e-4, 4.0, 1e-4},
      {"mermin_b", 0.875, 6.0, 6.0, 1e-4, 6.0, 1e-4},
  };
  for (const auto& t : targets) {
    const auto spec = builtin_game(t.game);
    const auto game = xor_to_game(spec);
    add(t.game, "classical", "-", "P", classical_max(game).value, t.classical_p, 0.0);
    add(t.game, "classical", "-", "S", classical_operator_max(correlation_coefficients(spec)), t.classical_s, 0.0);
    const double s_ghz = optimize_operator(spec, ghz_state(), config).best_value;
    add(t.game, "quantum", "ghz", "S", s_ghz, t.ghz_s, t.ghz_tol);
    add(t.game, "quantum", "ghz", "P", 0.5 * (1.0 + s_ghz / 8.0), 0.5 * (1.0 + t.ghz_s / 8.0), 1e-4);
    add(t.game, "quantum", "w", "S", optimize_operator(spec, w_state(), config).best_value, t.w_s, t.w_tol);
    add(t.game, "no_signaling", "-", "P", ns_max(game).value, 1.0, 1e-9);
  }

  for (const auto& set : paper_angle_sets()) {
    const bool s2 = set.name == "s2_ghz";
    const auto spec = builtin_game(s2 ? "mermin_a" : "mermin_b");
    add(spec.name, "published_angles", "ghz", "S", operator_expectation(spec, ghz_state(), set.setup()), s2 ? 4.0 : 6.0,
        1e-2);
  }

  const FurScenario fur({{0.5, 0.0, 0.0, 0}, {0.5, std::numbers::pi / 2, 0.0, 0}});
  add("fur", "quantum", "qubit", "zeta", zeta(fur).value, tsirelson_p, 1e-9);
  return rows;
}

ordered_json repro_to_json(const std::vector<ReproRow>& rows) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  ordered_json arr = ordered_json::array();
  bool all = true;
  for (const auto& r : rows) {
    ordered_json e;
    e["game"] = r.game;
    e["theory"] = r.theory;
    e["state"] = r.state;
    e["quantity"] = r.quantity;
    e["computed"] = r.computed;
    e["expected"] = r.expected;
    e["tolerance"] = r.tolerance;
    e["pass"] = r.pass;
    all = all && r.pass;
    arr.push_back(e);
  }
  j["rows"] = arr;
  j["all_pass"] = all;
  return j;
}

std::string repro_to_csv(const std::vector<ReproRow>& rows) {
  std::ostringstream out;
  out << "game,theory,state,quantity,computed,expected,tolerance,pass\n";
  for (const auto& r : rows)
    out << r.game << "," << r.theory << "," << r.state << "," << r.quantity << "," << fmt_double(r.computed) << ","
        << fmt_double(r.expected) << "," << fmt_double(r.tolerance) << "," << (r.pass ? "pass" : "FAIL") << "\n";
  return out.str();
}

ordered_json zeta_report(const json& measurements) {
  std::vector<FurMeasurement> ms;
  try {
    if (!measurements.is_array()) throw ParseError("measurements must be a JSON array");
    for (const auto& m : measurements)
      ms.push_back({m.at("p").get<double>(), m.value("theta", 0.0), m.value("phi", 0.0), m.value("x", 0)});
    const FurScenario scenario(std::move(ms));
    const auto z = zeta(scenario);
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["zeta"] = z.value;
    ordered_json amps = ordered_json::array();
    for (const auto& a : z.argmax_state.amplitudes()) amps.push_back({a.real(), a.imag()});
    j["argmax_state"] = amps;
    return j;
  } catch (const json::exception& e) {
    throw ParseError(std::string("measurements: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("measurements: ") + e.what());
  }
}

}  // namespace nlgames
