#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anchorfp/operators.hpp"
#include "anchorfp/schedules.hpp"

namespace anchorfp {

/// x_{n+1} = alpha u + (1 - alpha) (beta T x + (1 - beta) S x).
/// The inner blend is formed first; both go through combine().
Vector flmr_step(const Vector& u, double alpha, double beta, const Operator& t,
                 const Operator& s, const Vector& x);

/// y_{n+1} = alpha u + (1 - alpha) T y.
Vector halpern_step(const Vector& u, double alpha, const Operator& t, const Vector& y);

/// x_{n+1} = alpha u_n + (1 - alpha) S x, with alpha in (0,1].
Vector anchored_variable_step(const Vector& u_n, double alpha, const Operator& s,
                              const Vector& x);

struct AnchoredForm {
  double gamma = 0.0;
  Vector u_eff;
};

/// Rewrites alpha u + (1-alpha)(beta z + (1-beta) w) as gamma u_eff + (1-gamma) w
/// with gamma = alpha + beta - alpha beta and
/// u_eff = (alpha u + (1-alpha) beta z) / gamma.
AnchoredForm reduce_to_anchored(double alpha, double beta, const Vector& u, const Vector& z);

enum class IterationMode { flmr, halpern, anchored_variable, sequence_mapping };

const char* to_string(IterationMode mode);
std::optional<IterationMode> iteration_mode_from_string(const std::string& name);

/// u_n = u + n^-exponent * direction.
struct AnchorSequence {
  Vector direction;
  double exponent = 1.0;

  Vector at(const Vector& u, long n) const;
};

struct IterationConfig {
  IterationMode mode = IterationMode::flmr;
  Vector u;
  Vector x1;
  std::optional<Operator> t;
  std::optional<Operator> s;
  Schedule alpha = Schedule::harmonic(1.0, 1.0, 1.0);
  std::optional<Schedule> beta;
  std::optional<AnchorSequence> anchor_sequence;
  long max_iter = 500'000;
  double stop_tol = 1e-2;
  long trace_stride = 1;
  /// When set, only target distance and max_iter stop the run.
  std::optional<Vector> known_target;
  /// A common fixed point of T and S; required by sequence_mapping when the
  /// catalog witnesses of T and S are not already common.
  std::optional<Vector> witness;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  Eigen::Index dimension() const { return u.size(); }
};

enum class TraceStatus { converged_target, converged_residual, max_iter_reached };

const char* to_string(TraceStatus status);

struct TraceRecord {
  long n = 0;
  Vector x;
  std::optional<double> residual_t;
  std::optional<double> residual_s;
  double alpha = 0.0;
  std::optional<double> beta;
  std::optional<double> dist_to_target;
};

struct Trace {
  std::vector<TraceRecord> records;
  Vector final_point;
  TraceStatus status = TraceStatus::max_iter_reached;
  /// Index n of the final iterate x_n.
  long iterations_run = 0;
  long stride = 1;

  bool converged() const { return status != TraceStatus::max_iter_reached; }
};

/// A non-finite iterate appeared; carries the last finite state.
class NumericFailure : public Error {
 public:
  NumericFailure(const std::string& what, long n, Vector last_finite)
      : Error(what), n_(n), last_(std::move(last_finite)) {}
  long n() const { return n_; }
  const Vector& last_finite() const { return last_; }

 private:
  long n_;
  Vector last_;
};

/// Runs the configured recursion from x_1 until the target is reached,
/// residuals settle, or max_iter iterates have been produced.
Trace run_iteration(const IterationConfig& config);

}  // namespace anchorfp
