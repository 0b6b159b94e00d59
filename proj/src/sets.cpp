#include "anchorfp/sets.hpp"

#include <algorithm>

#include "anchorfp/oracle.hpp"

namespace anchorfp {

namespace {

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw InvalidSet(std::string(what) + " has non-finite components");
}

}  // namespace

Vector project_halfspace(const Vector& a, double b, const Vector& x) {
  require_same_dim(a, x, "project_halfspace");
  const double aa = squared_norm(a);
  if (aa == 0.0) throw InvalidSet("halfspace normal must be nonzero");
  const double excess = inner(a, x) - b;
  if (excess <= 0.0) return x;
  return x - (excess / aa) * a;
}

Vector project_ball(const Vector& center, double radius, const Vector& x) {
  require_same_dim(center, x, "project_ball");
  if (!(radius > 0.0)) throw InvalidSet("ball radius must be positive");
  const Vector offset = x - center;
  const double dist = norm(offset);
  if (dist <= radius) return x;
  return center + (radius / dist) * offset;
}

Vector project_box(const Vector& lo, const Vector& hi, const Vector& x) {
  require_same_dim(lo, hi, "project_box");
  require_same_dim(lo, x, "project_box");
  if ((lo.array() > hi.array()).any()) throw InvalidSet("box requires lo <= hi componentwise");
  return x.cwiseMax(lo).cwiseMin(hi);
}

const char* to_string(SetKind kind) {
  switch (kind) {
    case SetKind::halfspace: return "halfspace";
    case SetKind::ball: return "ball";
    case SetKind::box: return "box";
    case SetKind::intersection: return "intersection";
  }
  return "?";
}

ConvexSet ConvexSet::halfspace(Vector normal, double offset) {
  require_finite(normal, "halfspace normal");
  if (normal.size() == 0) throw InvalidSet("halfspace normal must have dimension >= 1");
  if (squared_norm(normal) == 0.0) throw InvalidSet("halfspace normal must be nonzero");
  if (!std::isfinite(offset)) throw InvalidSet("halfspace offset must be finite");
  ConvexSet s;
  s.kind_ = SetKind::halfspace;
  s.dim_ = normal.size();
  s.a_ = std::move(normal);
  s.b_ = offset;
  return s;
}

ConvexSet ConvexSet::ball(Vector center, double radius) {
  require_finite(center, "ball center");
  if (center.size() == 0) throw InvalidSet("ball center must have dimension >= 1");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidSet("ball radius must be positive");
  ConvexSet s;
  s.kind_ = SetKind::ball;
  s.dim_ = center.size();
  s.a_ = std::move(center);
  s.b_ = radius;
  return s;
}

ConvexSet ConvexSet::box(Vector lo, Vector hi) {
  require_finite(lo, "box lo");
  require_finite(hi, "box hi");
  if (lo.size() == 0 || lo.size() != hi.size()) {
    throw InvalidSet("box bounds must share a dimension >= 1");
  }
  if ((lo.array() > hi.array()).any()) throw InvalidSet("box requires lo <= hi componentwise");
  ConvexSet s;
  s.kind_ = SetKind::box;
  s.dim_ = lo.size();
  s.a_ = std::move(lo);
  s.hi_ = std::move(hi);
  return s;
}

ConvexSet ConvexSet::singleton(const Vector& p) { return box(p, p); }

ConvexSet ConvexSet::intersection(std::vector<ConvexSet> children) {
  if (children.empty()) throw InvalidSet("intersection needs at least one set");
  const auto d = children.front().dimension();
  for (const auto& c : children) {
    if (c.dimension() != d) throw InvalidSet("intersection children differ in dimension");
  }
  ConvexSet s;
  s.kind_ = SetKind::intersection;
  s.dim_ = d;
  s.children_ = std::make_shared<const std::vector<ConvexSet>>(std::move(children));
  return s;
}

bool ConvexSet::contains(const Vector& x, double tol) const {
  require_same_dim(x, Vector::Zero(dim_), "ConvexSet::contains");
  switch (kind_) {
    case SetKind::halfspace:
      return inner(a_, x) - b_ <= tol * norm(a_);
    case SetKind::ball:
      return distance(x, a_) <= b_ + tol;
    case SetKind::box:
      return (x.array() >= a_.array() - tol).all() && (x.array() <= hi_.array() + tol).all();
    case SetKind::intersection:
      return std::all_of(children_->begin(), children_->end(),
                         [&](const ConvexSet& c) { return c.contains(x, tol); });
  }
  return false;
}

Vector ConvexSet::project(const Vector& x) const {
  switch (kind_) {
    case SetKind::halfspace: return project_halfspace(a_, b_, x);
    case SetKind::ball: return project_ball(a_, b_, x);
    case SetKind::box: return project_box(a_, hi_, x);
    case SetKind::intersection: {
      if (contains(x, 0.0)) return x;
      return dykstra_project(flatten(), x).point;
    }
  }
  return x;
}

std::vector<ConvexSet> ConvexSet::flatten() const {
  if (kind_ != SetKind::intersection) return {*this};
  std::vector<ConvexSet> leaves;
  for (const auto& c : *children_) {
    auto sub = c.flatten();
    leaves.insert(leaves.end(), sub.begin(), sub.end());
  }
  return leaves;
}

}  // namespace anchorfp
