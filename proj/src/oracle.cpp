#include "anchorfp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace anchorfp {

namespace {

std::vector<ConvexSet> leaves_of(const std::vector<ConvexSet>& sets) {
  std::vector<ConvexSet> leaves;
  for (const auto& s : sets) {
    auto sub = s.flatten();
    leaves.insert(leaves.end(), sub.begin(), sub.end());
  }
  return leaves;
}

void check_sets(const std::vector<ConvexSet>& sets, const Vector& u, const char* where) {
  if (sets.empty()) throw UsageError(std::string(where) + ": no sets given");
  for (const auto& s : sets) {
    if (s.dimension() != u.size()) {
      throw ContractViolation(std::string(where) + ": set dimension differs from u");
    }
  }
}

bool feasible(const std::vector<ConvexSet>& sets, const Vector& y, double tol) {
  return std::all_of(sets.begin(), sets.end(),
                     [&](const ConvexSet& s) { return s.contains(y, tol); });
}

}  // namespace

const char* to_string(OracleStatus status) {
  return status == OracleStatus::converged ? "converged" : "unconverged";
}

OracleResult dykstra_project(const std::vector<ConvexSet>& sets, const Vector& u,
                             const DykstraOptions& options) {
  check_sets(sets, u, "dykstra_project");
  if (!(options.tol > 0.0)) throw ContractViolation("dykstra_project: tol must be positive");
  if (options.max_iter < 1) throw ContractViolation("dykstra_project: max_iter must be >= 1");

  const auto leaves = leaves_of(sets);
  const std::size_t m = leaves.size();
  std::vector<Vector> corrections(m, Vector::Zero(u.size()));

  OracleResult result;
  Vector x = u;
  for (long cycle = 1; cycle <= options.max_iter; ++cycle) {
    const Vector start = x;
    double correction_change = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const Vector shifted = x + corrections[i];
      x = leaves[i].project(shifted);
      Vector next = shifted - x;
      correction_change += squared_norm((next - corrections[i]).eval());
      corrections[i] = std::move(next);
    }
    result.iterations_used = cycle;
    if (distance(x, start) < options.tol && std::sqrt(correction_change) < options.tol) {
      result.status = OracleStatus::converged;
      break;
    }
  }
  result.point = x;

  if (result.converged() && feasible(leaves, x, 1e-7)) {
    result.certificate_gap =
        variational_inequality_check(leaves, u, x, options.certificate_probes, options.seed);
  } else {
    result.status = OracleStatus::unconverged;
    result.certificate_gap = std::numeric_limits<double>::infinity();
  }
  return result;
}

double variational_inequality_check(const std::vector<ConvexSet>& sets, const Vector& u,
                                    const Vector& p, int probes, std::uint64_t seed) {
  check_sets(sets, u, "variational_inequality_check");
  require_same_dim(u, p, "variational_inequality_check");
  if (probes < 1) throw ContractViolation("variational_inequality_check: probes must be >= 1");
  const auto leaves = leaves_of(sets);
  if (!feasible(leaves, p, 1e-7)) {
    throw PreconditionError("variational_inequality_check: p is not feasible");
  }

  const Vector direction = u - p;
  const double margin = std::max(1.0, norm(direction));
  const Vector lo = p.cwiseMin(u).array() - margin;
  const Vector hi = p.cwiseMax(u).array() + margin;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double best = 0.0;  // y = p
  int accepted = 0;
  constexpr int kRounds = 200;
  for (int k = 0; k < probes; ++k) {
    Vector y(p.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
    for (int round = 0; round < kRounds && !feasible(leaves, y, 1e-7); ++round) {
      for (const auto& s : leaves) y = s.project(y);
    }
    if (!feasible(leaves, y, 1e-7)) continue;
    ++accepted;
    best = std::max(best, inner(direction, (y - p).eval()));
  }
  if (accepted == 0) {
    throw SamplingFailure("variational_inequality_check: no feasible probe found");
  }
  return best;
}

}  // namespace anchorfp
