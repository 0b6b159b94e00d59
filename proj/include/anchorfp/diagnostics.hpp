#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "anchorfp/iterations.hpp"

namespace anchorfp {

/// A nonnegative sequence gamma(1), gamma(2), ... with a declared
/// summability flag. Values are not clipped to [0,1].
struct NonnegativeSequence {
  std::function<double(long)> value;
  bool summable = false;

  static NonnegativeSequence zero();
  /// coefficient * n^-exponent; summable iff exponent > 1.
  static NonnegativeSequence power(double coefficient, double exponent);
  static NonnegativeSequence from_schedule(const Schedule& s);
};

struct LiuLemmaReport {
  double xi_final = 0.0;
  long n = 0;
  bool alpha_diverges = false;
  bool gamma_summable = false;
  std::vector<std::string> hypothesis_violations;
  /// xi_N <= xi_{N/10} / 10.
  bool decade_drop = false;
  std::vector<double> xi;  // xi[0] = xi_1, ..., xi[N-1] = xi_N
};

/// Runs xi_{n+1} = (1 - alpha_n) xi_n + gamma_n up to xi_N.
LiuLemmaReport liu_lemma_check(double xi1, const Schedule& alpha,
                               const NonnegativeSequence& gamma, long n_max);

struct GapPoint {
  long n = 0;
  double gap = 0.0;
};

struct CouplingReport {
  std::vector<GapPoint> gaps;
  double first_decade_median = 0.0;
  double last_decade_median = 0.0;
  double final_gap = 0.0;
  bool vanishing = false;
};

/// ||x_n - y_n|| on every record index present in both traces.
CouplingReport coupling_gap(const Trace& x, const Trace& y);

/// Every recorded ||x_n - v|| <= max(||u - v||, ||x1 - v||) + 1e-9.
/// Throws PreconditionError unless v lies in `common_fixed_set`.
bool bounded_orbit_check(const Trace& trace, const Vector& u, const Vector& x1, const Vector& v,
                         const ConvexSet& common_fixed_set);

enum class RegimeVerdict { fix_t, fix_s, intersection, inconclusive };

const char* to_string(RegimeVerdict v);

struct RegimeReport {
  double dist_to_pt = 0.0;
  double dist_to_ps = 0.0;
  double dist_to_pf = 0.0;
  RegimeVerdict verdict = RegimeVerdict::inconclusive;
  /// Smallest and second-smallest of the three distances.
  std::pair<double, double> margins{0.0, 0.0};
};

/// Classifies which of the three candidate limits the run's final point reached.
RegimeReport regime_report(const Trace& trace, const Vector& pt, const Vector& ps,
                           const Vector& pf, double stop_tol);

}  // namespace anchorfp
