#include "anchorfp/schedules.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "anchorfp/errors.hpp"

namespace anchorfp {

namespace {

constexpr std::array<ScheduleFlag, 6> kAllFlags = {
    ScheduleFlag::vanishes,           ScheduleFlag::diverging_sum,
    ScheduleFlag::summable,           ScheduleFlag::summable_differences,
    ScheduleFlag::strictly_positive,  ScheduleFlag::liminf_product_positive};

FlagSet constant_flags(double v) {
  FlagSet f{ScheduleFlag::summable_differences};
  if (v == 0.0) {
    f.insert(ScheduleFlag::vanishes);
    f.insert(ScheduleFlag::summable);
  } else {
    f.insert(ScheduleFlag::diverging_sum);
    f.insert(ScheduleFlag::strictly_positive);
    if (v < 1.0) f.insert(ScheduleFlag::liminf_product_positive);
  }
  return f;
}

const FlagSet kInverseSquareFlags{ScheduleFlag::vanishes, ScheduleFlag::summable,
                                  ScheduleFlag::summable_differences,
                                  ScheduleFlag::strictly_positive};
const FlagSet kOneMinusInverseSquareFlags{ScheduleFlag::diverging_sum,
                                          ScheduleFlag::summable_differences};

bool in_unit_interval(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

}  // namespace

const char* to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::harmonic: return "harmonic";
    case ScheduleKind::constant: return "constant";
    case ScheduleKind::inverse_square: return "inverse_square";
    case ScheduleKind::one_minus_inverse_square: return "one_minus_inverse_square";
    case ScheduleKind::table: return "table";
  }
  return "?";
}

const char* to_string(ScheduleFlag f) {
  switch (f) {
    case ScheduleFlag::vanishes: return "vanishes";
    case ScheduleFlag::diverging_sum: return "diverging_sum";
    case ScheduleFlag::summable: return "summable";
    case ScheduleFlag::summable_differences: return "summable_differences";
    case ScheduleFlag::strictly_positive: return "strictly_positive";
    case ScheduleFlag::liminf_product_positive: return "liminf_product_positive";
  }
  return "?";
}

std::optional<ScheduleFlag> schedule_flag_from_string(const std::string& name) {
  for (auto f : kAllFlags) {
    if (name == to_string(f)) return f;
  }
  return std::nullopt;
}

std::vector<ScheduleFlag> FlagSet::list() const {
  std::vector<ScheduleFlag> out;
  for (auto f : kAllFlags) {
    if (has(f)) out.push_back(f);
  }
  return out;
}

Schedule Schedule::harmonic(double a, double c, double p) {
  if (!(a > 0.0) || !std::isfinite(a)) throw ContractViolation("harmonic schedule needs a > 0");
  if (!(c >= 0.0) || !std::isfinite(c)) throw ContractViolation("harmonic schedule needs c >= 0");
  if (!(p > 0.0) || !std::isfinite(p)) throw ContractViolation("harmonic schedule needs p > 0");
  Schedule s;
  s.kind_ = ScheduleKind::harmonic;
  s.a_ = a;
  s.c_ = c;
  s.p_ = p;
  // Flags describe the unclipped tail; the clip touches finitely many terms.
  s.flags_ = {ScheduleFlag::vanishes, ScheduleFlag::summable_differences,
              ScheduleFlag::strictly_positive};
  s.flags_.insert(p <= 1.0 ? ScheduleFlag::diverging_sum : ScheduleFlag::summable);
  return s;
}

Schedule Schedule::constant(double v) {
  if (!in_unit_interval(v)) {
    throw ContractViolation("schedule value " + std::to_string(v) + " outside [0,1]");
  }
  Schedule s;
  s.kind_ = ScheduleKind::constant;
  s.a_ = v;
  s.flags_ = constant_flags(v);
  return s;
}

Schedule Schedule::inverse_square() {
  Schedule s;
  s.kind_ = ScheduleKind::inverse_square;
  s.flags_ = kInverseSquareFlags;
  return s;
}

Schedule Schedule::one_minus_inverse_square() {
  Schedule s;
  s.kind_ = ScheduleKind::one_minus_inverse_square;
  s.flags_ = kOneMinusInverseSquareFlags;
  return s;
}

Schedule Schedule::table(std::vector<double> values, FlagSet flags,
                         std::optional<FlagSet> complement_flags) {
  if (values.empty()) throw ContractViolation("table schedule needs at least one value");
  for (double v : values) {
    if (!in_unit_interval(v)) {
      throw ContractViolation("schedule value " + std::to_string(v) + " outside [0,1]");
    }
  }
  if (flags.has(ScheduleFlag::summable) && flags.has(ScheduleFlag::diverging_sum)) {
    throw ContractViolation("table schedule flags claim both summable and diverging_sum");
  }
  Schedule s;
  s.kind_ = ScheduleKind::table;
  s.values_ = std::move(values);
  s.flags_ = flags;
  s.complement_ = complement_flags;
  return s;
}

double Schedule::operator()(long n) const {
  if (n < 1) throw ContractViolation("schedule index must be >= 1, got " + std::to_string(n));
  switch (kind_) {
    case ScheduleKind::harmonic:
      return std::min(1.0, a_ / std::pow(static_cast<double>(n) + c_, p_));
    case ScheduleKind::constant: return a_;
    case ScheduleKind::inverse_square: {
      const double nn = static_cast<double>(n);
      return 1.0 / (nn * nn);
    }
    case ScheduleKind::one_minus_inverse_square: {
      const double nn = static_cast<double>(n);
      return 1.0 - 1.0 / (nn * nn);
    }
    case ScheduleKind::table: {
      const auto idx = std::min<std::size_t>(static_cast<std::size_t>(n - 1), values_.size() - 1);
      return values_[idx];
    }
  }
  return 0.0;
}

FlagSet Schedule::complement_flags() const {
  switch (kind_) {
    case ScheduleKind::harmonic: {
      FlagSet f{ScheduleFlag::diverging_sum, ScheduleFlag::summable_differences};
      if (a_ / std::pow(1.0 + c_, p_) < 1.0) f.insert(ScheduleFlag::strictly_positive);
      return f;
    }
    case ScheduleKind::constant: return constant_flags(1.0 - a_);
    case ScheduleKind::inverse_square: return kOneMinusInverseSquareFlags;
    case ScheduleKind::one_minus_inverse_square: return kInverseSquareFlags;
    case ScheduleKind::table: return complement_.value_or(FlagSet{});
  }
  return {};
}

std::optional<std::pair<double, double>> Schedule::power_law() const {
  if (kind_ == ScheduleKind::harmonic) return std::pair{a_, p_};
  if (kind_ == ScheduleKind::inverse_square) return std::pair{1.0, 2.0};
  return std::nullopt;
}

std::optional<double> Schedule::limit() const {
  switch (kind_) {
    case ScheduleKind::harmonic:
    case ScheduleKind::inverse_square: return 0.0;
    case ScheduleKind::constant: return a_;
    case ScheduleKind::one_minus_inverse_square: return 1.0;
    case ScheduleKind::table: return std::nullopt;
  }
  return std::nullopt;
}

double schedule_value(const Schedule& s, long n) { return s(n); }

FlagSet schedule_properties(const Schedule& s) { return s.flags(); }

const char* to_string(Regime r) {
  switch (r) {
    case Regime::regime1: return "regime1";
    case Regime::regime2: return "regime2";
    case Regime::regime3: return "regime3";
    case Regime::halpern: return "halpern";
    case Regime::anchored: return "anchored";
  }
  return "?";
}

std::optional<Regime> regime_from_string(const std::string& name) {
  for (auto r : {Regime::regime1, Regime::regime2, Regime::regime3, Regime::halpern,
                 Regime::anchored}) {
    if (name == to_string(r)) return r;
  }
  return std::nullopt;
}

bool ValidationReport::has_violation(const std::string& v) const {
  return std::find(violations.begin(), violations.end(), v) != violations.end();
}

namespace {

enum class RatioVerdict { holds, fails, probed_holds, probed_fails };

RatioVerdict ratio_vanishes(const Schedule& alpha, const Schedule& beta) {
  if (beta.kind() == ScheduleKind::constant && beta.constant_value() == 0.0) {
    return RatioVerdict::holds;
  }
  if (alpha.kind() != ScheduleKind::table && beta.kind() != ScheduleKind::table) {
    const auto pa = alpha.power_law();
    const auto pb = beta.power_law();
    if (pa && pb) return pb->second > pa->second ? RatioVerdict::holds : RatioVerdict::fails;
    // beta/alpha >= beta because alpha <= 1.
    if (!beta.has(ScheduleFlag::vanishes)) return RatioVerdict::fails;
    const auto la = alpha.limit();
    if (la && *la > 0.0) return RatioVerdict::holds;
    return RatioVerdict::fails;
  }

  // At least one side is an explicit table: only finitely many values exist.
  long n_end = 100'000;
  for (const Schedule* s : {&alpha, &beta}) {
    if (s->kind() == ScheduleKind::table) {
      n_end = std::max<long>(n_end, static_cast<long>(s->values().size()));
    }
  }
  auto ratio = [&](long n) {
    const double a = alpha(n);
    return a > 0.0 ? beta(n) / a : std::numeric_limits<double>::infinity();
  };
  const double r_end = ratio(n_end);
  const double r_mid = ratio(std::max<long>(1, n_end / 10));
  const bool shrinking = r_end == 0.0 || (r_end <= 0.5 * r_mid && r_end < 1e-2);
  return shrinking ? RatioVerdict::probed_holds : RatioVerdict::probed_fails;
}

}  // namespace

ValidationReport validate_regime(Regime regime, const Schedule& alpha,
                                 const std::optional<Schedule>& beta) {
  const bool needs_beta =
      regime == Regime::regime1 || regime == Regime::regime2 || regime == Regime::regime3;
  if (needs_beta && !beta) {
    throw UsageError(std::string(to_string(regime)) + " requires a beta schedule");
  }
  if (!needs_beta && beta) {
    throw UsageError(std::string(to_string(regime)) + " takes no beta schedule");
  }

  ValidationReport report;
  report.regime = regime;
  auto& v = report.violations;

  if (alpha.asserted()) report.notes.emplace_back("alpha flags asserted, unverified");
  if (beta && beta->asserted()) report.notes.emplace_back("beta flags asserted, unverified");

  if (!alpha.has(ScheduleFlag::vanishes)) v.emplace_back(violation::alpha_not_vanishing);
  if (!alpha.has(ScheduleFlag::diverging_sum)) v.emplace_back(violation::alpha_sum_finite);
  if ((regime == Regime::regime2 || regime == Regime::regime3 || regime == Regime::anchored) &&
      !alpha.has(ScheduleFlag::strictly_positive)) {
    v.emplace_back(violation::alpha_not_positive);
  }

  switch (regime) {
    case Regime::regime1:
      if (!beta->complement_flags().has(ScheduleFlag::summable)) {
        v.emplace_back(violation::one_minus_beta);
      }
      if (!alpha.has(ScheduleFlag::summable_differences)) {
        v.emplace_back(violation::alpha_differences);
      }
      break;
    case Regime::regime2: {
      if (!beta->has(ScheduleFlag::vanishes)) v.emplace_back(violation::beta_not_vanishing);
      switch (ratio_vanishes(alpha, *beta)) {
        case RatioVerdict::holds: break;
        case RatioVerdict::fails: v.emplace_back(violation::ratio_not_vanishing); break;
        case RatioVerdict::probed_holds:
          report.notes.emplace_back("beta/alpha → 0 probed, not proven");
          break;
        case RatioVerdict::probed_fails:
          report.notes.emplace_back("beta/alpha → 0 probed, not proven");
          v.emplace_back(violation::ratio_not_vanishing);
          break;
      }
      break;
    }
    case Regime::regime3:
      if (!beta->has(ScheduleFlag::liminf_product_positive)) {
        v.emplace_back(violation::liminf_product);
      }
      break;
    case Regime::halpern:
      if (!alpha.has(ScheduleFlag::summable_differences)) {
        v.emplace_back(violation::alpha_differences);
      }
      break;
    case Regime::anchored: break;
  }
  return report;
}

ProbeReport partial_sum_probe(const Schedule& s, long n_max) {
  if (n_max < 1) throw ContractViolation("partial_sum_probe: N must be >= 1");
  ProbeReport r;
  double prev = s(1);
  r.partial_sum = prev;
  r.min_value = prev;
  r.max_value = prev;
  for (long n = 2; n <= n_max; ++n) {
    const double cur = s(n);
    r.partial_sum += cur;
    r.total_variation += std::abs(cur - prev);
    r.min_value = std::min(r.min_value, cur);
    r.max_value = std::max(r.max_value, cur);
    prev = cur;
  }
  return r;
}

}  // namespace anchorfp
