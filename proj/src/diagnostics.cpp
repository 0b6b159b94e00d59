#include "anchorfp/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace anchorfp {

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    m = 0.5 * (m + lower);
  }
  return m;
}

}  // namespace

NonnegativeSequence NonnegativeSequence::zero() {
  return {[](long) { return 0.0; }, true};
}

NonnegativeSequence NonnegativeSequence::power(double coefficient, double exponent) {
  if (!(coefficient >= 0.0)) throw ContractViolation("gamma coefficient must be >= 0");
  return {[=](long n) { return coefficient * std::pow(static_cast<double>(n), -exponent); },
          coefficient == 0.0 || exponent > 1.0};
}

NonnegativeSequence NonnegativeSequence::from_schedule(const Schedule& s) {
  return {[s](long n) { return s(n); }, s.has(ScheduleFlag::summable)};
}

LiuLemmaReport liu_lemma_check(double xi1, const Schedule& alpha,
                               const NonnegativeSequence& gamma, long n_max) {
  if (n_max < 2) throw ContractViolation("liu_lemma_check: N must be >= 2");
  if (!(xi1 >= 0.0)) throw ContractViolation("liu_lemma_check: xi_1 must be >= 0");

  LiuLemmaReport r;
  r.n = n_max;
  r.alpha_diverges = alpha.has(ScheduleFlag::diverging_sum);
  r.gamma_summable = gamma.summable;
  if (!r.alpha_diverges) r.hypothesis_violations.emplace_back("Σα = ∞ fails");
  if (!r.gamma_summable) r.hypothesis_violations.emplace_back("Σγ < ∞ fails");

  r.xi.reserve(static_cast<std::size_t>(n_max));
  double xi = xi1;
  r.xi.push_back(xi);
  for (long n = 1; n < n_max; ++n) {
    const double g = gamma.value(n);
    if (!(g >= 0.0)) {
      throw ContractViolation("liu_lemma_check: gamma_" + std::to_string(n) + " is negative");
    }
    xi = (1.0 - alpha(n)) * xi + g;
    r.xi.push_back(xi);
  }
  r.xi_final = xi;
  const double decade_ago = r.xi[static_cast<std::size_t>(std::max<long>(1, n_max / 10) - 1)];
  r.decade_drop = xi <= decade_ago / 10.0;
  return r;
}

CouplingReport coupling_gap(const Trace& x, const Trace& y) {
  if (x.stride != y.stride) throw UsageError("coupling_gap: traces differ in record stride");
  if (x.final_point.size() != y.final_point.size()) {
    throw UsageError("coupling_gap: traces differ in dimension");
  }

  CouplingReport r;
  auto ix = x.records.begin();
  auto iy = y.records.begin();
  while (ix != x.records.end() && iy != y.records.end()) {
    if (ix->n < iy->n) {
      ++ix;
    } else if (iy->n < ix->n) {
      ++iy;
    } else {
      r.gaps.push_back({ix->n, distance(ix->x, iy->x)});
      ++ix;
      ++iy;
    }
  }
  if (r.gaps.empty()) return r;

  const long first_n = r.gaps.front().n;
  const long last_n = r.gaps.back().n;
  std::vector<double> first, last;
  for (const auto& g : r.gaps) {
    if (g.n < 10 * first_n) first.push_back(g.gap);
    if (10 * g.n > last_n) last.push_back(g.gap);
  }
  r.first_decade_median = median(first);
  r.last_decade_median = median(last);
  r.final_gap = r.gaps.back().gap;
  r.vanishing = r.last_decade_median <= 0.1 * r.first_decade_median && r.final_gap < 1e-3;
  return r;
}

bool bounded_orbit_check(const Trace& trace, const Vector& u, const Vector& x1, const Vector& v,
                         const ConvexSet& common_fixed_set) {
  if (!common_fixed_set.contains(v, 1e-9)) {
    throw PreconditionError("bounded_orbit_check: v is not in the common fixed set");
  }
  const double bound = std::max(distance(u, v), distance(x1, v)) + 1e-9;
  return std::all_of(trace.records.begin(), trace.records.end(),
                     [&](const TraceRecord& r) { return distance(r.x, v) <= bound; });
}

const char* to_string(RegimeVerdict v) {
  switch (v) {
    case RegimeVerdict::fix_t: return "fixT";
    case RegimeVerdict::fix_s: return "fixS";
    case RegimeVerdict::intersection: return "intersection";
    case RegimeVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

RegimeReport regime_report(const Trace& trace, const Vector& pt, const Vector& ps,
                           const Vector& pf, double stop_tol) {
  RegimeReport r;
  r.dist_to_pt = distance(trace.final_point, pt);
  r.dist_to_ps = distance(trace.final_point, ps);
  r.dist_to_pf = distance(trace.final_point, pf);

  std::array<std::pair<double, RegimeVerdict>, 3> ranked{{{r.dist_to_pt, RegimeVerdict::fix_t},
                                                          {r.dist_to_ps, RegimeVerdict::fix_s},
                                                          {r.dist_to_pf, RegimeVerdict::intersection}}};
  std::stable_sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  r.margins = {ranked[0].first, ranked[1].first};
  // A tie for the minimum has no argmin.
  if (ranked[0].first < stop_tol && ranked[0].first <= 0.5 * ranked[1].first &&
      ranked[0].first < ranked[1].first) {
    r.verdict = ranked[0].second;
  }
  return r;
}

}  // namespace anchorfp
