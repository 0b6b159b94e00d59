#include "anchorfp/operators.hpp"

#include <array>
#include <cmath>

namespace anchorfp {

namespace {

constexpr std::array<Property, 5> kAllProperties = {
    Property::nonexpansive, Property::quasinonexpansive, Property::strongly_quasinonexpansive,
    Property::firmly_nonexpansive, Property::demiclosed_complement_at_zero};

const PropertySet kProjectionProperties{
    Property::firmly_nonexpansive, Property::nonexpansive, Property::quasinonexpansive,
    Property::strongly_quasinonexpansive, Property::demiclosed_complement_at_zero};

const PropertySet kOscillatorProperties{Property::quasinonexpansive,
                                        Property::strongly_quasinonexpansive,
                                        Property::demiclosed_complement_at_zero};

void require_dim(Eigen::Index expected, const Vector& x, const char* where) {
  if (expected != 0 && x.size() != expected) {
    throw ContractViolation(std::string(where) + ": dimension mismatch (" +
                            std::to_string(expected) + " vs " + std::to_string(x.size()) + ")");
  }
}

}  // namespace

const char* to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::halfspace_projection: return "halfspace_projection";
    case OperatorKind::ball_projection: return "ball_projection";
    case OperatorKind::box_projection: return "box_projection";
    case OperatorKind::radial_oscillator: return "radial_oscillator";
    case OperatorKind::convex_combination: return "convex_combination";
    case OperatorKind::identity: return "identity";
  }
  return "?";
}

const char* to_string(Property p) {
  switch (p) {
    case Property::nonexpansive: return "nonexpansive";
    case Property::quasinonexpansive: return "quasinonexpansive";
    case Property::strongly_quasinonexpansive: return "strongly_quasinonexpansive";
    case Property::firmly_nonexpansive: return "firmly_nonexpansive";
    case Property::demiclosed_complement_at_zero: return "demiclosed_complement_at_zero";
  }
  return "?";
}

std::optional<Property> property_from_string(const std::string& name) {
  for (auto p : kAllProperties) {
    if (name == to_string(p)) return p;
  }
  return std::nullopt;
}

bool PropertySet::upward_closed() const {
  if (has(Property::firmly_nonexpansive) && !has(Property::nonexpansive)) return false;
  if (has(Property::nonexpansive) && !has(Property::quasinonexpansive)) return false;
  if (has(Property::strongly_quasinonexpansive) && !has(Property::quasinonexpansive)) return false;
  return true;
}

std::vector<Property> PropertySet::list() const {
  std::vector<Property> out;
  for (auto p : kAllProperties) {
    if (has(p)) out.push_back(p);
  }
  return out;
}

void Operator::declare(std::optional<PropertySet> declared, PropertySet admissible) {
  const PropertySet props = declared.value_or(admissible);
  if (!props.upward_closed()) {
    throw ContractViolation(std::string(to_string(kind_)) +
                            ": declared properties are not closed upward "
                            "(firmly => nonexpansive => quasinonexpansive)");
  }
  if (!props.subset_of(admissible)) {
    throw ContractViolation(std::string(to_string(kind_)) +
                            ": declared properties exceed what this mapping satisfies");
  }
  props_ = props;
}

Operator Operator::identity(std::optional<PropertySet> declared) {
  Operator op;
  op.kind_ = OperatorKind::identity;
  op.declare(declared, kProjectionProperties);
  return op;
}

Operator Operator::halfspace_projection(Vector normal, double offset,
                                        std::optional<PropertySet> declared) {
  Operator op;
  op.kind_ = OperatorKind::halfspace_projection;
  op.set_ = ConvexSet::halfspace(std::move(normal), offset);
  op.dim_ = op.set_->dimension();
  op.declare(declared, kProjectionProperties);
  return op;
}

Operator Operator::ball_projection(Vector center, double radius,
                                   std::optional<PropertySet> declared) {
  Operator op;
  op.kind_ = OperatorKind::ball_projection;
  op.set_ = ConvexSet::ball(std::move(center), radius);
  op.dim_ = op.set_->dimension();
  op.declare(declared, kProjectionProperties);
  return op;
}

Operator Operator::box_projection(Vector lo, Vector hi, std::optional<PropertySet> declared) {
  Operator op;
  op.kind_ = OperatorKind::box_projection;
  op.set_ = ConvexSet::box(std::move(lo), std::move(hi));
  op.dim_ = op.set_->dimension();
  op.declare(declared, kProjectionProperties);
  return op;
}

Operator Operator::radial_oscillator(std::optional<PropertySet> declared) {
  Operator op;
  op.kind_ = OperatorKind::radial_oscillator;
  op.declare(declared, kOscillatorProperties);
  return op;
}

bool Operator::is_projection() const {
  return kind_ == OperatorKind::halfspace_projection || kind_ == OperatorKind::ball_projection ||
         kind_ == OperatorKind::box_projection;
}

const ConvexSet& Operator::projection_set() const {
  if (!is_projection()) {
    throw PreconditionError(std::string(to_string(kind_)) + " is not a catalog projection");
  }
  return *set_;
}

std::optional<ConvexSet> Operator::fixed_set(Eigen::Index d) const {
  require_dim(dim_, Vector::Zero(d), "fixed_set");
  switch (kind_) {
    case OperatorKind::identity: return std::nullopt;
    case OperatorKind::halfspace_projection:
    case OperatorKind::ball_projection:
    case OperatorKind::box_projection: return set_;
    case OperatorKind::radial_oscillator: return ConvexSet::singleton(Vector::Zero(d));
    case OperatorKind::convex_combination: {
      if (beta_ == 1.0) return first_->fixed_set(d);
      if (beta_ == 0.0) return second_->fixed_set(d);
      auto a = first_->fixed_set(d);
      auto b = second_->fixed_set(d);
      if (!a) return b;
      if (!b) return a;
      return ConvexSet::intersection({*a, *b});
    }
  }
  return std::nullopt;
}

bool Operator::fixes(const Vector& p, double tol) const {
  require_dim(dim_, p, "fixes");
  const auto set = fixed_set(p.size());
  return !set || set->contains(p, tol);
}

Vector Operator::fixed_witness(Eigen::Index d) const {
  require_dim(dim_, Vector::Zero(d), "fixed_witness");
  switch (kind_) {
    case OperatorKind::identity:
    case OperatorKind::radial_oscillator: return Vector::Zero(d);
    case OperatorKind::halfspace_projection:
    case OperatorKind::box_projection: return set_->project(Vector::Zero(d));
    case OperatorKind::ball_projection: return set_->center();
    case OperatorKind::convex_combination: return witness_;
  }
  return Vector::Zero(d);
}

Vector Operator::operator()(const Vector& x) const {
  require_dim(dim_, x, to_string(kind_));
  switch (kind_) {
    case OperatorKind::identity: return x;
    case OperatorKind::halfspace_projection:
    case OperatorKind::ball_projection:
    case OperatorKind::box_projection: return set_->project(x);
    case OperatorKind::radial_oscillator: return anchorfp::radial_oscillator(x);
    case OperatorKind::convex_combination: return combine(beta_, (*first_)(x), (*second_)(x));
  }
  return x;
}

Vector apply(const Operator& op, const Vector& x) { return op(x); }

Vector radial_oscillator(const Vector& x) {
  const double r = norm(x);
  if (r == 0.0) return Vector::Zero(x.size());
  return (0.5 * std::cos(1.0 / r)) * x;
}

Operator convex_combine_op(double beta, const Operator& t, const Operator& s,
                           const Vector& witness, std::optional<PropertySet> declared) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw ContractViolation("convex_combine_op: beta must lie in [0,1], got " +
                            std::to_string(beta));
  }
  if (!t.has(Property::quasinonexpansive) || !s.has(Property::quasinonexpansive)) {
    throw ContractViolation("convex_combine_op: both mappings must be quasinonexpansive");
  }
  if (t.dimension() != 0 && s.dimension() != 0 && t.dimension() != s.dimension()) {
    throw ContractViolation("convex_combine_op: mappings differ in dimension");
  }
  const Eigen::Index d = t.dimension() != 0 ? t.dimension() : s.dimension();
  require_dim(d, witness, "convex_combine_op witness");
  if (!t.fixes(witness) || !s.fixes(witness)) {
    throw PreconditionError(
        "convex_combine_op: witness is not a common fixed point; refusing construction");
  }

  Operator op;
  op.kind_ = OperatorKind::convex_combination;
  op.dim_ = d;
  op.beta_ = beta;
  op.first_ = std::make_shared<const Operator>(t);
  op.second_ = std::make_shared<const Operator>(s);
  op.witness_ = witness;

  PropertySet props;
  if (beta == 1.0) {
    props = t.properties();
  } else if (beta == 0.0) {
    props = s.properties();
  } else {
    props = t.properties() & s.properties();
    props.insert(Property::quasinonexpansive);
    // I - U is demiclosed at 0 whenever U is nonexpansive.
    if (props.has(Property::nonexpansive)) props.insert(Property::demiclosed_complement_at_zero);
  }
  op.declare(declared, props);
  if (!op.has(Property::quasinonexpansive)) {
    throw ContractViolation("convex_combination: quasinonexpansive must be declared");
  }
  return op;
}

double fixed_point_residual(const Operator& op, const Vector& x) { return distance(x, op(x)); }

bool quasi_check(const Operator& op, const Vector& x, const Vector& p) {
  require_same_dim(x, p, "quasi_check");
  if (!op.fixes(p)) {
    throw PreconditionError("quasi_check: p is not in the declared fixed set");
  }
  return distance(op(x), p) <= distance(x, p) + 1e-9;
}

bool firm_check(const Operator& projection, const Vector& x, const Vector& y) {
  if (!projection.is_projection()) {
    throw PreconditionError("firm_check: only catalog projections are supported");
  }
  require_same_dim(x, y, "firm_check");
  const Vector px = projection(x);
  const Vector py = projection(y);
  const Vector dp = px - py;
  return squared_norm(dp) <= inner(dp, (x - y).eval()) + 1e-9;
}

}  // namespace anchorfp
