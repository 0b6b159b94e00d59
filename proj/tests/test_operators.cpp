#include <doctest.h>

#include <cmath>
#include <numbers>

#include "anchorfp/operators.hpp"
#include "test_support.hpp"

using namespace anchorfp;
using anchorfp::test::vec;

namespace {

Operator half_x1() { return Operator::halfspace_projection(vec({1, 0}), 1); }
Operator half_x2() { return Operator::halfspace_projection(vec({0, 1}), 1); }

}  // namespace

TEST_CASE("apply dispatch") {
  CHECK(apply(Operator::identity(), vec({2, 3})) == vec({2, 3}));
  CHECK(apply(half_x1(), vec({3, 3})) == vec({1, 3}));
  const auto u = convex_combine_op(0.5, half_x1(), half_x2(), vec({1, 1}));
  CHECK(apply(u, vec({3, 3})) == vec({2, 2}));
  CHECK_THROWS_AS(apply(half_x1(), vec({1, 2, 3})), ContractViolation);
}

TEST_CASE("radial oscillator values") {
  const double pi = std::numbers::pi;
  CHECK(radial_oscillator(vec({0, 0})) == vec({0, 0}));
  CHECK(test::near(radial_oscillator(vec({1 / pi, 0})), vec({-1 / (2 * pi), 0}), 1e-15));
  CHECK(test::near(radial_oscillator(vec({2 / pi, 0})), vec({0, 0}), 1e-15));
  const auto osc = Operator::radial_oscillator();
  CHECK(osc.has(Property::quasinonexpansive));
  CHECK(osc.has(Property::strongly_quasinonexpansive));
  CHECK_FALSE(osc.has(Property::nonexpansive));
  CHECK(osc.fixes(vec({0, 0, 0})));
  CHECK_FALSE(osc.fixes(vec({0.1, 0, 0})));
}

TEST_CASE("radial oscillator is not nonexpansive") {
  // cos(1/r) flips sign between r = 1/(4 pi) and r = 1/(5 pi).
  const double pi = std::numbers::pi;
  const auto x = vec({1 / (4 * pi), 0});
  const auto y = vec({1 / (5 * pi), 0});
  const double image_gap = (radial_oscillator(x) - radial_oscillator(y)).norm();
  CHECK(image_gap > (x - y).norm());

  // A seeded search in the oscillation region finds violations as well.
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> r(1e-3, 0.1);
  int found = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto a = vec({r(rng), 0});
    const auto b = vec({r(rng), 0});
    if ((radial_oscillator(a) - radial_oscillator(b)).norm() > (a - b).norm()) ++found;
  }
  CHECK(found > 0);
}

TEST_CASE("fixed point residual") {
  CHECK(fixed_point_residual(half_x1(), vec({0, 0})) == 0.0);
  CHECK(fixed_point_residual(half_x1(), vec({3, 3})) == 2.0);
  CHECK(fixed_point_residual(Operator::radial_oscillator(), vec({0, 0})) == 0.0);
}

TEST_CASE("quasi check") {
  std::mt19937_64 rng(9);
  const auto osc = Operator::radial_oscillator();
  for (int k = 0; k < 100; ++k) {
    CHECK(quasi_check(osc, test::uniform_vector(rng, 2, -3, 3), vec({0, 0})));
  }
  CHECK(quasi_check(Operator::ball_projection(vec({0, 0}), 1), vec({2, 0}), vec({0, 0})));
  const auto u = convex_combine_op(0.5, half_x1(), half_x2(), vec({1, 1}));
  CHECK(quasi_check(u, vec({3, 3}), vec({1, 1})));
  CHECK_THROWS_AS(quasi_check(u, vec({3, 3}), vec({2, 0})), PreconditionError);
  CHECK_THROWS_AS(quasi_check(osc, vec({3, 3}), vec({1, 0})), PreconditionError);
}

TEST_CASE("firm check") {
  const auto ball = Operator::ball_projection(vec({0, 0}), 1);
  CHECK(firm_check(ball, vec({2, 0}), vec({0, 0})));
  CHECK(firm_check(half_x1(), vec({5, -1}), vec({5, -1})));
  CHECK_THROWS_AS(firm_check(Operator::radial_oscillator(), vec({1, 0}), vec({0, 0})),
                  PreconditionError);
  CHECK_THROWS_AS(firm_check(Operator::identity(), vec({1, 0}), vec({0, 0})), PreconditionError);

  const auto box = Operator::box_projection(vec({0, 0}), vec({1, 1}));
  std::mt19937_64 rng(4);
  int failures = 0;
  for (int k = 0; k < 10000; ++k) {
    failures += !firm_check(box, test::uniform_vector(rng, 2, -5, 5), test::uniform_vector(rng, 2, -5, 5));
  }
  CHECK(failures == 0);
}

TEST_CASE("convex combination") {
  const auto t = half_x1();
  const auto s = half_x2();
  const auto at_one = convex_combine_op(1.0, t, s, vec({1, 1}));
  std::mt19937_64 rng(21);
  for (int k = 0; k < 50; ++k) {
    const auto x = test::uniform_vector(rng, 2, -4, 4);
    CHECK(at_one(x) == t(x));
  }
  const auto mid = convex_combine_op(0.5, t, s, vec({1, 1}));
  CHECK(mid(vec({1, 1})) == vec({1, 1}));
  CHECK(mid.has(Property::quasinonexpansive));
  CHECK(mid.has(Property::nonexpansive));
  CHECK(mid.fixed_set(2)->kind() == SetKind::intersection);
  CHECK(at_one.fixed_set(2)->kind() == SetKind::halfspace);

  CHECK_THROWS_AS(convex_combine_op(1.5, t, s, vec({1, 1})), ContractViolation);
  CHECK_THROWS_AS(convex_combine_op(-0.1, t, s, vec({1, 1})), ContractViolation);
  CHECK_THROWS_AS(convex_combine_op(0.5, t, s, vec({3, 0})), PreconditionError);

  const auto not_quasi = Operator::halfspace_projection(vec({1, 0}), 1, PropertySet{});
  CHECK_THROWS_AS(convex_combine_op(0.5, not_quasi, s, vec({1, 1})), ContractViolation);

  const auto with_osc = convex_combine_op(0.5, Operator::radial_oscillator(),
                                          Operator::ball_projection(vec({0, 0}), 1), vec({0, 0}));
  CHECK(with_osc.has(Property::quasinonexpansive));
  CHECK_FALSE(with_osc.has(Property::nonexpansive));
}

TEST_CASE("fixed set of the combination is the common fixed set") {
  const auto t = Operator::ball_projection(vec({0, 0}), 1);
  const auto s = Operator::halfspace_projection(vec({1, 0}), 0);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> beta_dist(0.05, 0.95);
  int fixed_points_seen = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto u = convex_combine_op(beta_dist(rng), t, s, vec({0, 0}));
    // Half of the samples are drawn from F itself so the implication is exercised.
    Vector z = test::uniform_vector(rng, 2, -2, 2);
    if (k % 2 == 0) z = s(t(z));
    if (fixed_point_residual(u, z) <= 1e-9) {
      ++fixed_points_seen;
      CHECK(fixed_point_residual(t, z) <= 1e-6);
      CHECK(fixed_point_residual(s, z) <= 1e-6);
    }
  }
  CHECK(fixed_points_seen >= 400);
  CHECK(fixed_point_residual(convex_combine_op(0.3, t, s, vec({-0.5, 0.5})), vec({-0.5, 0.5})) == 0.0);
}

TEST_CASE("property declarations are closed upward") {
  CHECK_THROWS_AS(Operator::ball_projection(vec({0}), 1, PropertySet{Property::firmly_nonexpansive}),
                  ContractViolation);
  CHECK_THROWS_AS(Operator::ball_projection(vec({0}), 1, PropertySet{Property::nonexpansive}),
                  ContractViolation);
  CHECK_THROWS_AS(Operator::radial_oscillator(PropertySet{Property::nonexpansive, Property::quasinonexpansive}),
                  ContractViolation);
  const auto narrowed = Operator::ball_projection(vec({0}), 1, PropertySet{Property::quasinonexpansive});
  CHECK(narrowed.has(Property::quasinonexpansive));
  CHECK_FALSE(narrowed.has(Property::nonexpansive));
}

TEST_CASE("catalog quasinonexpansive operators fix their witness") {
  const std::vector<Operator> catalog = {
      Operator::identity(),
      Operator::halfspace_projection(vec({1, 2}), -1),
      Operator::ball_projection(vec({3, 1}), 0.5),
      Operator::box_projection(vec({1, 1}), vec({2, 3})),
      Operator::radial_oscillator(),
  };
  for (const auto& op : catalog) {
    const auto w = op.fixed_witness(2);
    CHECK(op.fixes(w));
    CHECK(fixed_point_residual(op, w) <= 1e-12);
  }
}

TEST_CASE("apply stays finite on finite input") {
  std::mt19937_64 rng(12);
  const std::vector<Operator> catalog = {
      Operator::halfspace_projection(vec({1, 2}), -1), Operator::ball_projection(vec({3, 1}), 0.5),
      Operator::box_projection(vec({1, 1}), vec({2, 3})), Operator::radial_oscillator()};
  for (const auto& op : catalog) {
    for (int k = 0; k < 500; ++k) {
      const double scale = std::pow(10.0, static_cast<int>(k % 20) - 10);
      CHECK(op(test::uniform_vector(rng, 2, -scale, scale)).allFinite());
    }
  }
}
