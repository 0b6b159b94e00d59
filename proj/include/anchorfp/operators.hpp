#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "anchorfp/sets.hpp"

namespace anchorfp {

enum class OperatorKind {
  halfspace_projection,
  ball_projection,
  box_projection,
  radial_oscillator,
  convex_combination,
  identity,
};

const char* to_string(OperatorKind kind);

enum class Property : std::uint8_t {
  nonexpansive = 1u << 0,
  quasinonexpansive = 1u << 1,
  strongly_quasinonexpansive = 1u << 2,
  firmly_nonexpansive = 1u << 3,
  demiclosed_complement_at_zero = 1u << 4,
};

const char* to_string(Property p);
std::optional<Property> property_from_string(const std::string& name);

/// Small bit set of declared analytic properties.
class PropertySet {
 public:
  PropertySet() = default;
  PropertySet(std::initializer_list<Property> props) {
    for (auto p : props) insert(p);
  }

  void insert(Property p) { bits_ |= static_cast<std::uint8_t>(p); }
  bool has(Property p) const { return (bits_ & static_cast<std::uint8_t>(p)) != 0; }
  bool subset_of(PropertySet other) const { return (bits_ & ~other.bits_) == 0; }
  PropertySet operator&(PropertySet other) const {
    PropertySet r;
    r.bits_ = bits_ & other.bits_;
    return r;
  }
  bool operator==(const PropertySet&) const = default;

  /// firmly => nonexpansive => quasinonexpansive, strongly quasi => quasi.
  bool upward_closed() const;
  std::vector<Property> list() const;

 private:
  std::uint8_t bits_ = 0;
};

/// A mapping R^d -> R^d with declared properties and a description of its
/// fixed-point set. Value type; children of a combination are shared, immutable.
class Operator {
 public:
  static Operator identity(std::optional<PropertySet> declared = std::nullopt);
  static Operator halfspace_projection(Vector normal, double offset,
                                       std::optional<PropertySet> declared = std::nullopt);
  static Operator ball_projection(Vector center, double radius,
                                  std::optional<PropertySet> declared = std::nullopt);
  static Operator box_projection(Vector lo, Vector hi,
                                 std::optional<PropertySet> declared = std::nullopt);
  static Operator radial_oscillator(std::optional<PropertySet> declared = std::nullopt);

  OperatorKind kind() const { return kind_; }
  const PropertySet& properties() const { return props_; }
  bool has(Property p) const { return props_.has(p); }

  /// 0 when the operator accepts any dimension.
  Eigen::Index dimension() const { return dim_; }

  /// Fixed-point set in dimension d. Empty optional means the whole space.
  std::optional<ConvexSet> fixed_set(Eigen::Index d) const;
  /// Membership of p in the declared fixed set.
  bool fixes(const Vector& p, double tol = 1e-9) const;

  /// A point of the fixed set in dimension d.
  Vector fixed_witness(Eigen::Index d) const;

  /// The projection set for halfspace/ball/box kinds.
  const ConvexSet& projection_set() const;
  bool is_projection() const;

  double beta() const { return beta_; }
  const Operator& first() const { return *first_; }
  const Operator& second() const { return *second_; }
  const Vector& witness() const { return witness_; }

  Vector operator()(const Vector& x) const;

 private:
  friend Operator convex_combine_op(double beta, const Operator& t, const Operator& s,
                                    const Vector& witness, std::optional<PropertySet> declared);
  Operator() = default;
  void declare(std::optional<PropertySet> declared, PropertySet admissible);

  OperatorKind kind_ = OperatorKind::identity;
  Eigen::Index dim_ = 0;
  PropertySet props_;
  std::optional<ConvexSet> set_;
  double beta_ = 0.0;
  std::shared_ptr<const Operator> first_;
  std::shared_ptr<const Operator> second_;
  Vector witness_;
};

Vector apply(const Operator& op, const Vector& x);

/// 0 at the origin, otherwise (x/2) cos(1/||x||). Quasinonexpansive with
/// Fix = {0}, but not nonexpansive near the origin.
Vector radial_oscillator(const Vector& x);

/// U = beta T + (1 - beta) S. Both children must be quasinonexpansive and
/// `witness` must be fixed by both; otherwise construction is refused.
/// `declared` may narrow the derived property set.
Operator convex_combine_op(double beta, const Operator& t, const Operator& s,
                           const Vector& witness,
                           std::optional<PropertySet> declared = std::nullopt);

/// ||x - op(x)||
double fixed_point_residual(const Operator& op, const Vector& x);

/// ||op(x) - p|| <= ||x - p|| + 1e-9 for p in the declared fixed set.
bool quasi_check(const Operator& op, const Vector& x, const Vector& p);

/// ||Px - Py||^2 <= <Px - Py, x - y> + 1e-9, for catalog projections only.
bool firm_check(const Operator& projection, const Vector& x, const Vector& y);

}  // namespace anchorfp
