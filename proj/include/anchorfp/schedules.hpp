#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace anchorfp {

enum class ScheduleKind { harmonic, constant, inverse_square, one_minus_inverse_square, table };

const char* to_string(ScheduleKind kind);

enum class ScheduleFlag : std::uint8_t {
  vanishes = 1u << 0,
  diverging_sum = 1u << 1,
  summable = 1u << 2,
  summable_differences = 1u << 3,
  strictly_positive = 1u << 4,
  liminf_product_positive = 1u << 5,
};

const char* to_string(ScheduleFlag f);
std::optional<ScheduleFlag> schedule_flag_from_string(const std::string& name);

class FlagSet {
 public:
  FlagSet() = default;
  FlagSet(std::initializer_list<ScheduleFlag> flags) {
    for (auto f : flags) insert(f);
  }
  void insert(ScheduleFlag f) { bits_ |= static_cast<std::uint8_t>(f); }
  bool has(ScheduleFlag f) const { return (bits_ & static_cast<std::uint8_t>(f)) != 0; }
  bool operator==(const FlagSet&) const = default;
  std::vector<ScheduleFlag> list() const;

 private:
  std::uint8_t bits_ = 0;
};

/// A sequence s(1), s(2), ... in [0,1] whose asymptotic properties are
/// assigned analytically from its closed form. Table schedules carry
/// caller-asserted flags instead.
class Schedule {
 public:
  /// min(1, a / (n + c)^p)
  static Schedule harmonic(double a, double c, double p);
  static Schedule constant(double v);
  static Schedule inverse_square();
  static Schedule one_minus_inverse_square();
  /// Explicit values; the last one repeats forever. `complement_flags`
  /// describes 1 - s(n) and is needed only for the 1 - beta summability test.
  static Schedule table(std::vector<double> values, FlagSet flags,
                        std::optional<FlagSet> complement_flags = std::nullopt);

  double operator()(long n) const;

  ScheduleKind kind() const { return kind_; }
  const FlagSet& flags() const { return flags_; }
  bool has(ScheduleFlag f) const { return flags_.has(f); }
  /// Flags of the sequence 1 - s(n).
  FlagSet complement_flags() const;
  /// True when flags were supplied rather than derived.
  bool asserted() const { return kind_ == ScheduleKind::table; }

  double a() const { return a_; }
  double c() const { return c_; }
  double p() const { return p_; }
  double constant_value() const { return a_; }
  const std::vector<double>& values() const { return values_; }
  const std::optional<FlagSet>& declared_complement_flags() const { return complement_; }

  /// (coefficient, exponent) when s(n) ~ coefficient * n^-exponent.
  std::optional<std::pair<double, double>> power_law() const;
  /// lim s(n) for the closed-form kinds.
  std::optional<double> limit() const;

 private:
  Schedule() = default;

  ScheduleKind kind_ = ScheduleKind::constant;
  double a_ = 0.0;
  double c_ = 0.0;
  double p_ = 1.0;
  std::vector<double> values_;
  FlagSet flags_;
  std::optional<FlagSet> complement_;
};

double schedule_value(const Schedule& s, long n);
FlagSet schedule_properties(const Schedule& s);

enum class Regime { regime1, regime2, regime3, halpern, anchored };

const char* to_string(Regime r);
std::optional<Regime> regime_from_string(const std::string& name);

struct ValidationReport {
  Regime regime = Regime::halpern;
  std::vector<std::string> violations;
  /// Caveats such as asserted table flags or a numerically probed ratio.
  std::vector<std::string> notes;

  bool valid() const { return violations.empty(); }
  bool has_violation(const std::string& v) const;
};

/// Checks the hypotheses each convergence regime places on alpha and beta.
/// Throws UsageError when beta is missing for regimes 1-3 or given for
/// halpern/anchored.
ValidationReport validate_regime(Regime regime, const Schedule& alpha,
                                 const std::optional<Schedule>& beta);

struct ProbeReport {
  double partial_sum = 0.0;
  double total_variation = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;
};

/// Numeric evidence over n = 1..N. Advisory only.
ProbeReport partial_sum_probe(const Schedule& s, long n_max);

namespace violation {
inline constexpr const char* alpha_not_vanishing = "alpha does not vanish";
inline constexpr const char* alpha_sum_finite = "alpha sum does not diverge";
inline constexpr const char* alpha_not_positive = "alpha not strictly positive";
inline constexpr const char* alpha_differences = "alpha differences not summable";
inline constexpr const char* beta_not_vanishing = "beta does not vanish";
inline constexpr const char* ratio_not_vanishing = "beta/alpha does not vanish";
inline constexpr const char* one_minus_beta = "1−β not summable";
inline constexpr const char* liminf_product = "liminf β(1−β) = 0";
}  // namespace violation

}  // namespace anchorfp
