#pragma once

#include <memory>
#include <vector>

#include "anchorfp/hilbert.hpp"

namespace anchorfp {

/// Nearest point of {y : <a, y> <= b}. Throws InvalidSet when a = 0.
Vector project_halfspace(const Vector& a, double b, const Vector& x);

/// Nearest point of the closed ball B(center, radius). Throws InvalidSet when radius <= 0.
Vector project_ball(const Vector& center, double radius, const Vector& x);

/// Componentwise clamp to [lo, hi]. Throws InvalidSet when lo > hi somewhere.
Vector project_box(const Vector& lo, const Vector& hi, const Vector& x);

enum class SetKind { halfspace, ball, box, intersection };

const char* to_string(SetKind kind);

/// A nonempty closed convex subset of R^d with a membership test and its
/// metric projection. Immutable once built.
class ConvexSet {
 public:
  static ConvexSet halfspace(Vector normal, double offset);
  static ConvexSet ball(Vector center, double radius);
  static ConvexSet box(Vector lo, Vector hi);
  /// The single point {p}, stored as the degenerate box [p, p].
  static ConvexSet singleton(const Vector& p);
  static ConvexSet intersection(std::vector<ConvexSet> children);

  SetKind kind() const { return kind_; }
  Eigen::Index dimension() const { return dim_; }

  const Vector& normal() const { return a_; }
  double offset() const { return b_; }
  const Vector& center() const { return a_; }
  double radius() const { return b_; }
  const Vector& lo() const { return a_; }
  const Vector& hi() const { return hi_; }
  const std::vector<ConvexSet>& children() const { return *children_; }

  /// Membership up to `tol`, measured as a distance-like violation.
  bool contains(const Vector& x, double tol = 1e-9) const;

  /// Metric projection. Analytic for halfspace/ball/box; intersections go
  /// through Dykstra at oracle tolerance.
  Vector project(const Vector& x) const;

  bool has_analytic_projection() const { return kind_ != SetKind::intersection; }

  /// Leaf sets of a (possibly nested) intersection; a leaf returns itself.
  std::vector<ConvexSet> flatten() const;

 private:
  ConvexSet() = default;

  SetKind kind_ = SetKind::halfspace;
  Eigen::Index dim_ = 0;
  Vector a_;
  double b_ = 0.0;
  Vector hi_;
  std::shared_ptr<const std::vector<ConvexSet>> children_;
};

}  // namespace anchorfp
