#pragma once

#include <cstdint>
#include <vector>

#include "anchorfp/sets.hpp"

namespace anchorfp {

enum class OracleStatus { converged, unconverged };

const char* to_string(OracleStatus status);

struct OracleResult {
  Vector point;
  long iterations_used = 0;
  /// Largest <u - p, y - p> seen over feasible probe points y.
  double certificate_gap = 0.0;
  OracleStatus status = OracleStatus::unconverged;

  bool converged() const { return status == OracleStatus::converged; }
};

struct DykstraOptions {
  double tol = 1e-10;
  long max_iter = 1'000'000;
  int certificate_probes = 2000;
  std::uint64_t seed = 0x5eedULL;
};

/// Projection of u onto the intersection of `sets` by Dykstra's cyclic
/// projections with correction terms. Nested intersections are flattened.
/// When the cycle budget runs out the last iterate is returned with status
/// unconverged.
OracleResult dykstra_project(const std::vector<ConvexSet>& sets, const Vector& u,
                             const DykstraOptions& options = {});

/// Max of <u - p, y - p> over `probes` feasible points y (p itself included).
/// A true projection p gives a value <= 0 up to rounding.
double variational_inequality_check(const std::vector<ConvexSet>& sets, const Vector& u,
                                    const Vector& p, int probes,
                                    std::uint64_t seed = 0x5eedULL);

}  // namespace anchorfp
