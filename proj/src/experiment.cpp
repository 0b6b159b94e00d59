#include "anchorfp/experiment.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace anchorfp {

namespace {

constexpr std::initializer_list<const char*> kExperimentKeys = {
    "mode",     "dimension",  "u",       "x1",           "T",       "S",
    "alpha",    "beta",       "anchor_sequence", "max_iter", "stop_tol", "trace_stride",
    "targets",  "output_prefix", "regime", "witness"};

template <class F>
auto under_key(const char* key, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError& e) {
    throw ConfigError(e.what(), key);
  } catch (const Error& e) {
    throw ConfigError(e.what(), key);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(e.what(), key);
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

long integer(const Json& j) {
  if (!j.is_number_integer() && !(j.is_number() && j.get<double>() == std::floor(j.get<double>()))) {
    throw ConfigError("expected an integer");
  }
  return static_cast<long>(j.get<double>());
}

double finite_number(const Json& j) {
  if (!j.is_number() || !std::isfinite(j.get<double>())) throw ConfigError("expected a number");
  return j.get<double>();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

}  // namespace

Experiment parse_experiment(const Json& j) {
  if (!j.is_object()) throw ConfigError("experiment file must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : kExperimentKeys) known = known || key == k;
    if (!known) throw ConfigError("unknown key", key);
  }
  auto require = [&](const char* key) -> const Json& {
    if (!j.contains(key)) throw ConfigError("missing", key);
    return j.at(key);
  };

  Experiment e;
  auto& c = e.config;

  c.mode = under_key("mode", [&] {
    const auto& m = require("mode");
    const auto mode = m.is_string() ? iteration_mode_from_string(m.get<std::string>())
                                    : std::nullopt;
    if (!mode) throw ConfigError("expected flmr, halpern, anchored_variable or sequence_mapping");
    return *mode;
  });
  c.u = under_key("u", [&] { return vector_from_json(require("u")); });
  c.x1 = under_key("x1", [&] { return vector_from_json(require("x1")); });
  if (j.contains("dimension")) {
    under_key("dimension", [&] {
      if (integer(j.at("dimension")) != c.u.size()) {
        throw ConfigError("does not match the length of u");
      }
    });
  }
  if (j.contains("T")) c.t = under_key("T", [&] { return operator_from_json(j.at("T")); });
  if (j.contains("S")) c.s = under_key("S", [&] { return operator_from_json(j.at("S")); });
  c.alpha = under_key("alpha", [&] { return schedule_from_json(require("alpha")); });
  if (j.contains("beta")) {
    c.beta = under_key("beta", [&] { return schedule_from_json(j.at("beta")); });
  }
  if (j.contains("anchor_sequence")) {
    c.anchor_sequence = under_key("anchor_sequence", [&] {
      const auto& a = j.at("anchor_sequence");
      if (!a.is_object()) throw ConfigError("expected {\"direction\": [...], \"exponent\": q}");
      for (const auto& [key, value] : a.items()) {
        if (key != "direction" && key != "exponent") throw ConfigError("unknown key \"" + key + "\"");
      }
      if (!a.contains("direction") || !a.contains("exponent")) {
        throw ConfigError("needs \"direction\" and \"exponent\"");
      }
      return AnchorSequence{vector_from_json(a.at("direction")), finite_number(a.at("exponent"))};
    });
  }
  if (j.contains("max_iter")) c.max_iter = under_key("max_iter", [&] { return integer(j.at("max_iter")); });
  if (j.contains("stop_tol")) {
    c.stop_tol = under_key("stop_tol", [&] { return finite_number(j.at("stop_tol")); });
  }
  if (j.contains("trace_stride")) {
    c.trace_stride = under_key("trace_stride", [&] { return integer(j.at("trace_stride")); });
  }
  if (j.contains("witness")) c.witness = under_key("witness", [&] { return vector_from_json(j.at("witness")); });
  if (j.contains("regime")) {
    e.regime = under_key("regime", [&] {
      const auto& r = j.at("regime");
      const auto regime = r.is_string() ? regime_from_string(r.get<std::string>()) : std::nullopt;
      if (!regime) throw ConfigError("expected regime1, regime2, regime3, halpern or anchored");
      return *regime;
    });
  }
  if (j.contains("targets")) {
    under_key("targets", [&] {
      const auto& t = j.at("targets");
      if (t.is_string() && t.get<std::string>() == "oracle") {
        e.oracle_targets = true;
      } else if (t.is_object()) {
        for (const auto& [key, value] : t.items()) {
          if (key != "PT" && key != "PS" && key != "PF") throw ConfigError("unknown key \"" + key + "\"");
        }
        if (!t.contains("PT") || !t.contains("PS") || !t.contains("PF")) {
          throw ConfigError("needs PT, PS and PF");
        }
        e.targets = Targets{vector_from_json(t.at("PT")), vector_from_json(t.at("PS")),
                            vector_from_json(t.at("PF"))};
        for (const Vector* v : {&e.targets->pt, &e.targets->ps, &e.targets->pf}) {
          if (v->size() != c.u.size()) throw ConfigError("target dimension differs from u");
        }
      } else {
        throw ConfigError("expected \"oracle\" or {\"PT\", \"PS\", \"PF\"}");
      }
      if (!c.t || !c.s) throw ConfigError("targets need both T and S");
    });
  }
  if (j.contains("output_prefix")) {
    e.output_prefix = under_key("output_prefix", [&] {
      const auto& p = j.at("output_prefix");
      if (!p.is_string() || p.get<std::string>().empty()) throw ConfigError("expected a non-empty string");
      return p.get<std::string>();
    });
  }

  c.validate();
  return e;
}

Experiment load_experiment(const std::filesystem::path& path) {
  Experiment e = parse_experiment(read_json_file(path));
  if (e.output_prefix.empty()) e.output_prefix = (path.parent_path() / path.stem()).string();
  return e;
}

Targets compute_oracle_targets(const IterationConfig& config) {
  if (!config.t || !config.s) throw ConfigError("oracle targets need both T and S", "targets");
  const auto d = config.dimension();
  auto project = [&](std::vector<ConvexSet> sets, const char* which) -> Vector {
    if (sets.empty()) return config.u;
    const auto r = dykstra_project(sets, config.u);
    if (!r.converged()) {
      throw ConfigError(std::string("Dykstra did not converge for ") + which, "targets");
    }
    return r.point;
  };
  std::vector<ConvexSet> fix_t, fix_s;
  if (auto f = config.t->fixed_set(d)) fix_t = f->flatten();
  if (auto f = config.s->fixed_set(d)) fix_s = f->flatten();
  std::vector<ConvexSet> both = fix_t;
  both.insert(both.end(), fix_s.begin(), fix_s.end());
  return {project(fix_t, "PT"), project(fix_s, "PS"), project(both, "PF")};
}

Regime effective_regime(const Experiment& e) {
  if (e.regime) return *e.regime;
  switch (e.config.mode) {
    case IterationMode::halpern: return Regime::halpern;
    case IterationMode::anchored_variable: return Regime::anchored;
    default: break;
  }
  throw ConfigError("required for mode " + std::string(to_string(e.config.mode)), "regime");
}

int run_command(const std::filesystem::path& path, const RunOverrides& overrides,
                std::ostream& out, std::ostream& err) {
  try {
    Experiment e = load_experiment(path);
    auto& config = e.config;
    if (overrides.max_iter) config.max_iter = *overrides.max_iter;
    if (overrides.stop_tol) config.stop_tol = *overrides.stop_tol;
    config.validate();

    if (e.oracle_targets) e.targets = compute_oracle_targets(config);
    if (e.targets && e.regime) {
      switch (*e.regime) {
        case Regime::regime1:
        case Regime::halpern: config.known_target = e.targets->pt; break;
        case Regime::regime2:
        case Regime::anchored: config.known_target = e.targets->ps; break;
        case Regime::regime3: config.known_target = e.targets->pf; break;
      }
    }

    Trace trace;
    try {
      trace = run_iteration(config);
    } catch (const NumericFailure& f) {
      err << "error: " << f.what() << "\n"
          << Json{{"n", f.n()}, {"last_finite_iterate", to_json(f.last_finite())}}.dump() << "\n";
      return exit_code::error;
    }

    std::ostringstream csv;
    write_trace_csv(csv, trace);
    write_file(e.output_prefix + ".trace.csv", csv.str());
    const Json summary = trace_summary(trace);
    write_file(e.output_prefix + ".summary.json", summary.dump(2) + "\n");
    out << summary.dump() << "\n";
    if (e.targets) {
      const auto report =
          regime_report(trace, e.targets->pt, e.targets->ps, e.targets->pf, config.stop_tol);
      const Json rj = to_json(report);
      write_file(e.output_prefix + ".regime.json", rj.dump(2) + "\n");
      out << rj.dump() << "\n";
    }
    return trace.converged() ? exit_code::ok : exit_code::unconverged;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return exit_code::error;
  }
}

int validate_command(const std::filesystem::path& path, std::ostream& out, std::ostream& err) {
  try {
    const Experiment e = load_experiment(path);
    const auto report = validate_regime(effective_regime(e), e.config.alpha, e.config.beta);
    out << to_json(report).dump(2) << "\n";
    return report.valid() ? exit_code::ok : exit_code::violations;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return exit_code::error;
  }
}

int oracle_command(const std::string& sets, const std::string& u, std::ostream& out,
                   std::ostream& err) {
  try {
    Json j;
    const auto first = sets.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (sets[first] == '[' || sets[first] == '{')) {
      try {
        j = Json::parse(sets);
      } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what(), "sets");
      }
    } else {
      j = read_json_file(sets);
    }
    std::vector<ConvexSet> parsed;
    if (j.is_array()) {
      for (const auto& s : j) parsed.push_back(convex_set_from_json(s));
    } else {
      parsed.push_back(convex_set_from_json(j));
    }

    std::vector<double> coords;
    std::stringstream ss(u);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(item, &used);
      } catch (const std::exception&) {
        throw ConfigError("not a number: \"" + item + "\"", "u");
      }
      if (item.find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(v)) {
        throw ConfigError("not a number: \"" + item + "\"", "u");
      }
      coords.push_back(v);
    }
    if (coords.empty()) throw ConfigError("empty vector", "u");
    const Vector anchor = Eigen::Map<const Vector>(coords.data(), static_cast<Eigen::Index>(coords.size()));
    for (const auto& s : parsed) {
      if (s.dimension() != anchor.size()) throw ConfigError("set dimension differs from u", "sets");
    }

    const auto result = dykstra_project(parsed, anchor);
    out << to_json(result).dump() << "\n";
    return result.converged() ? exit_code::ok : exit_code::unconverged;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return exit_code::error;
  }
}

}  // namespace anchorfp
