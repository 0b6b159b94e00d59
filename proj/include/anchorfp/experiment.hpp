#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "anchorfp/serialization.hpp"

namespace anchorfp {

struct Targets {
  Vector pt;
  Vector ps;
  Vector pf;
};

/// A parsed experiment file.
struct Experiment {
  IterationConfig config;
  std::optional<Regime> regime;
  std::optional<Targets> targets;
  bool oracle_targets = false;
  std::string output_prefix;
};

/// Unknown keys and invalid values raise ConfigError naming the key.
Experiment parse_experiment(const Json& j);
Experiment load_experiment(const std::filesystem::path& path);

/// P_Fix(T)(u), P_Fix(S)(u) and P_F(u) by Dykstra on the declared fixed sets.
Targets compute_oracle_targets(const IterationConfig& config);

/// The regime a file is validated under: explicit "regime", else implied by mode.
Regime effective_regime(const Experiment& e);

struct RunOverrides {
  std::optional<long> max_iter;
  std::optional<double> stop_tol;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int error = 1;
inline constexpr int unconverged = 2;
inline constexpr int violations = 3;
}  // namespace exit_code

/// Writes <prefix>.trace.csv, <prefix>.summary.json and, with targets,
/// <prefix>.regime.json. 0 converged, 2 max_iter reached, 1 error.
int run_command(const std::filesystem::path& path, const RunOverrides& overrides,
                std::ostream& out, std::ostream& err);

/// Prints the regime validation report. 0 valid, 3 violations, 1 error.
int validate_command(const std::filesystem::path& path, std::ostream& out, std::ostream& err);

/// `sets` is inline JSON (a set or an array of sets) or a path to such a
/// file; `u` is a comma-separated list. 0 converged, 2 unconverged, 1 error.
int oracle_command(const std::string& sets, const std::string& u, std::ostream& out,
                   std::ostream& err);

}  // namespace anchorfp
