// One line per criterion; exit status is nonzero if any line is FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "anchorfp/experiment.hpp"

using namespace anchorfp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Vector uniform(std::mt19937_64& rng, Eigen::Index d, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = dist(rng);
  return v;
}

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Every trajectory produced here is checked against the orbit bound.
struct OrbitCheck {
  std::string name;
  bool ok;
};
std::vector<OrbitCheck> orbits;

void record_orbit(const std::string& name, const Trace& trace, const IterationConfig& c,
                  const Vector& v, const ConvexSet& common) {
  orbits.push_back({name, bounded_orbit_check(trace, c.u, c.x1, v, common)});
}

const ConvexSet kQuadrant = ConvexSet::intersection(
    {ConvexSet::halfspace(vec2(1, 0), 1), ConvexSet::halfspace(vec2(0, 1), 1)});

IterationConfig instance_a(IterationMode mode, std::optional<Schedule> beta) {
  IterationConfig c;
  c.mode = mode;
  c.u = vec2(3, 3);
  c.x1 = vec2(0, 0);
  c.t = Operator::halfspace_projection(vec2(1, 0), 1);
  if (mode != IterationMode::halpern) c.s = Operator::halfspace_projection(vec2(0, 1), 1);
  c.alpha = Schedule::harmonic(1, 1, 1);
  c.beta = std::move(beta);
  c.max_iter = 500000;
  c.stop_tol = 1e-2;
  return c;
}

void regime_separation() {
  struct Case {
    const char* name;
    Schedule beta;
    Vector target;
  };
  const Case cases[] = {{"regime1", Schedule::one_minus_inverse_square(), vec2(1, 3)},
                        {"regime2", Schedule::inverse_square(), vec2(3, 1)},
                        {"regime3", Schedule::constant(0.5), vec2(1, 1)}};
  bool pass = true;
  std::string detail;
  for (const auto& k : cases) {
    auto c = instance_a(IterationMode::flmr, k.beta);
    c.known_target = k.target;
    const auto start = Clock::now();
    const auto trace = run_iteration(c);
    const double secs = seconds_since(start);
    const double dist = (trace.final_point - k.target).norm();
    const bool ok = dist < 1e-2 && trace.iterations_run <= 500000 && secs < 5.0;
    pass = pass && ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s dist=%.3g n=%ld t=%.4fs; ", k.name, dist, trace.iterations_run,
                  secs);
    detail += buf;
    record_orbit(std::string("instance A ") + k.name, trace, c, vec2(1, 1), kQuadrant);
  }
  report(1, "regime separation", pass, detail);
}

void oracle_agreement() {
  const auto ball = ConvexSet::ball(vec2(0, 0), 1);
  const auto half = ConvexSet::halfspace(vec2(1, 0), 0);
  const Vector u = vec2(1, 1);
  const auto oracle = dykstra_project({ball, half}, u);

  IterationConfig c;
  c.mode = IterationMode::flmr;
  c.u = u;
  c.x1 = vec2(0, 0);
  c.t = Operator::ball_projection(vec2(0, 0), 1);
  c.s = Operator::halfspace_projection(vec2(1, 0), 0);
  c.alpha = Schedule::harmonic(1, 1, 1);
  c.beta = Schedule::constant(0.5);
  c.known_target = oracle.point;
  c.stop_tol = 5e-3;
  const auto trace = run_iteration(c);
  const double dist = (trace.final_point - oracle.point).norm();
  const double cert_tol = 1e-6 * (1 + u.norm());
  const bool pass = oracle.converged() && dist <= 5e-3 && oracle.certificate_gap <= cert_tol;
  char buf[200];
  std::snprintf(buf, sizeof buf, "oracle=(%.6g,%.6g) dist=%.3g (tol 5e-3) certificate=%.3g (tol %.3g)",
                oracle.point[0], oracle.point[1], dist, oracle.certificate_gap, cert_tol);
  report(2, "oracle agreement", pass, buf);
  record_orbit("instance B", trace, c, vec2(0, 0), ConvexSet::intersection({ball, half}));
}

void quasinonexpansive_regime3() {
  IterationConfig c;
  c.mode = IterationMode::flmr;
  c.u = vec2(2, 0);
  c.x1 = vec2(2, 0);
  c.t = Operator::radial_oscillator();
  c.s = Operator::ball_projection(vec2(0, 0), 1);
  c.alpha = Schedule::harmonic(1, 1, 1);
  c.beta = Schedule::constant(0.5);
  c.known_target = vec2(0, 0);
  const auto trace = run_iteration(c);
  const double dist = trace.final_point.norm();
  const bool pass = !c.t->has(Property::nonexpansive) && c.t->has(Property::quasinonexpansive) &&
                    dist < 1e-2;
  report(3, "quasinonexpansive regime 3", pass,
         fmt("dist to origin=%.3g", dist) + " n=" + std::to_string(trace.iterations_run));
  record_orbit("oscillator", trace, c, vec2(0, 0), ConvexSet::singleton(vec2(0, 0)));
}

void identity_suite() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> lambda(0.0, 1.0);
  const auto start = Clock::now();
  bool pass = true;
  double worst = 0.0;
  for (Eigen::Index d : {1, 2, 5, 20}) {
    for (int k = 0; k < 10000; ++k) {
      const double l = lambda(rng);
      const Vector x = uniform(rng, d, -10, 10);
      const Vector y = uniform(rng, d, -10, 10);
      const double scale = 1 + x.squaredNorm() + y.squaredNorm();
      const double r = convexity_identity_residual(l, x, y) / scale;
      worst = std::max(worst, r);
      if (r > 1e-9) pass = false;
    }
  }
  const double secs = seconds_since(start);
  pass = pass && secs < 1.0;
  char buf[120];
  std::snprintf(buf, sizeof buf, "worst scaled residual=%.3g t=%.3fs", worst, secs);
  report(4, "identity suite", pass, buf);
}

void property_suite() {
  std::mt19937_64 rng(7);
  const std::vector<Operator> projections = {
      Operator::halfspace_projection(vec2(1, 2), 0.5), Operator::ball_projection(vec2(0.5, -1), 1.5),
      Operator::box_projection(vec2(-1, 0), vec2(2, 1))};
  long firm_failures = 0;
  for (const auto& p : projections) {
    for (int k = 0; k < 10000; ++k) {
      if (!firm_check(p, uniform(rng, 2, -5, 5), uniform(rng, 2, -5, 5))) ++firm_failures;
    }
  }
  const auto t = Operator::halfspace_projection(vec2(1, 0), 1);
  const auto s = Operator::ball_projection(vec2(0, 0), 2);
  const std::vector<Operator> quasi = {
      Operator::identity(), projections[0], projections[1], projections[2], Operator::radial_oscillator(),
      convex_combine_op(0.3, t, s, vec2(0, 0))};
  long quasi_failures = 0;
  long quasi_checked = 0;
  for (const auto& op : quasi) {
    if (!op.has(Property::quasinonexpansive)) {
      ++quasi_failures;
      continue;
    }
    const auto fixed = op.fixed_set(2);
    for (int k = 0; k < 1000; ++k) {
      const Vector x = uniform(rng, 2, -5, 5);
      Vector p = uniform(rng, 2, -5, 5);
      if (fixed) p = fixed->project(p);
      ++quasi_checked;
      if (!quasi_check(op, x, p)) ++quasi_failures;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "firm failures=%ld/30000, quasi failures=%ld/%ld", firm_failures,
                quasi_failures, quasi_checked);
  report(5, "firm/quasi property suite", firm_failures == 0 && quasi_failures == 0, buf);
}

void lemma_suite() {
  const auto liu = liu_lemma_check(1.0, Schedule::harmonic(1, 1, 1), NonnegativeSequence::zero(), 10000);
  const double rel = std::abs(liu.xi_final - 1e-4) / 1e-4;
  const bool liu_ok = rel <= 1e-12 && liu.hypothesis_violations.empty();

  auto cx = instance_a(IterationMode::flmr, Schedule::one_minus_inverse_square());
  auto cy = instance_a(IterationMode::halpern, std::nullopt);
  cx.max_iter = cy.max_iter = 10000;
  cx.stop_tol = cy.stop_tol = 1e-12;
  const auto x = run_iteration(cx);
  const auto y = run_iteration(cy);
  const auto coupling = coupling_gap(x, y);
  const bool coupling_ok = coupling.gaps.back().n == 10000 && coupling.final_gap < 1e-3;
  record_orbit("coupling flmr", x, cx, vec2(1, 1), kQuadrant);
  record_orbit("coupling halpern", y, cy, vec2(1, 3), ConvexSet::halfspace(vec2(1, 0), 1));

  // Informational: where the gap first drops below the threshold.
  cx.max_iter = cy.max_iter = 30000;
  const auto xl = run_iteration(cx);
  const auto yl = run_iteration(cy);
  long crossing = -1;
  for (const auto& g : coupling_gap(xl, yl).gaps) {
    if (g.gap >= 1e-3) crossing = -1;
    else if (crossing < 0) crossing = g.n;
  }

  bool orbits_ok = true;
  std::string bad;
  for (const auto& o : orbits) {
    if (!o.ok) {
      orbits_ok = false;
      bad += " " + o.name;
    }
  }

  char buf[400];
  std::snprintf(buf, sizeof buf,
                "liu xi_1e4 rel err=%.3g (tol 1e-12) %s; coupling gap at n=1e4 = %.6g (tol 1e-3) %s, "
                "stays below 1e-3 from n=%ld; bounded orbit on %zu runs %s%s",
                rel, liu_ok ? "ok" : "FAILED", coupling.final_gap, coupling_ok ? "ok" : "FAILED", crossing,
                orbits.size(), orbits_ok ? "ok" : "FAILED:", bad.c_str());
  report(6, "lemma suite", liu_ok && coupling_ok && orbits_ok, buf);
}

void mode_equivalence() {
  auto flmr = instance_a(IterationMode::flmr, Schedule::constant(0.5));
  flmr.max_iter = 10000;
  flmr.stop_tol = 1e-12;
  auto seq = flmr;
  seq.mode = IterationMode::sequence_mapping;
  const auto a = run_iteration(flmr);
  const auto b = run_iteration(seq);
  record_orbit("flmr 1e4", a, flmr, vec2(1, 1), kQuadrant);
  record_orbit("sequence_mapping 1e4", b, seq, vec2(1, 1), kQuadrant);
  double worst_seq = a.records.size() == b.records.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < std::min(a.records.size(), b.records.size()); ++i) {
    worst_seq = std::max(worst_seq, (a.records[i].x - b.records[i].x).norm());
  }

  double worst_red = 0.0;
  for (const auto& beta : {Schedule::one_minus_inverse_square(), Schedule::inverse_square(),
                           Schedule::constant(0.5)}) {
    auto c = instance_a(IterationMode::flmr, beta);
    Vector x = c.x1;
    Vector y = c.x1;
    for (long n = 1; n < 10000; ++n) {
      const double al = c.alpha(n), be = beta(n);
      const auto form = reduce_to_anchored(al, be, c.u, (*c.t)(y));
      y = anchored_variable_step(form.u_eff, form.gamma, *c.s, y);
      x = flmr_step(c.u, al, be, *c.t, *c.s, x);
      worst_red = std::max(worst_red, (x - y).norm());
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "flmr vs sequence_mapping max diff=%.3g; reduction max diff=%.3g (tol 1e-10)",
                worst_seq, worst_red);
  report(7, "mode equivalence", worst_seq <= 1e-10 && worst_red <= 1e-10, buf);
}

void write_file(const std::filesystem::path& p, const Json& j) { std::ofstream(p) << j.dump(2); }

Json experiment(const char* regime, Json beta) {
  return Json{{"mode", "flmr"},
              {"u", {3, 3}},
              {"x1", {0, 0}},
              {"T", Json::parse(R"({"kind": "halfspace_projection", "params": {"a": [1, 0], "b": 1}})")},
              {"S", Json::parse(R"({"kind": "halfspace_projection", "params": {"a": [0, 1], "b": 1}})")},
              {"alpha", Json::parse(R"({"kind": "harmonic", "a": 1, "c": 1, "p": 1})")},
              {"beta", std::move(beta)},
              {"regime", regime},
              {"targets", "oracle"},
              {"trace_stride", 100}};
}

void validator_table() {
  const auto alpha = Schedule::harmonic(1, 1, 1);
  struct Row {
    Regime regime;
    Schedule beta;
    const char* expected;  // nullptr means valid
  };
  const Row rows[] = {
      {Regime::regime1, Schedule::one_minus_inverse_square(), nullptr},
      {Regime::regime1, Schedule::inverse_square(), violation::one_minus_beta},
      {Regime::regime1, Schedule::constant(0.5), violation::one_minus_beta},
      {Regime::regime2, Schedule::one_minus_inverse_square(), violation::beta_not_vanishing},
      {Regime::regime2, Schedule::inverse_square(), nullptr},
      {Regime::regime2, Schedule::constant(0.5), violation::beta_not_vanishing},
      {Regime::regime3, Schedule::one_minus_inverse_square(), violation::liminf_product},
      {Regime::regime3, Schedule::inverse_square(), violation::liminf_product},
      {Regime::regime3, Schedule::constant(0.5), nullptr},
  };
  int table_ok = 0;
  for (const auto& r : rows) {
    const auto rep = validate_regime(r.regime, alpha, r.beta);
    const bool ok = r.expected ? (!rep.valid() && rep.has_violation(r.expected)) : rep.valid();
    if (ok) ++table_ok;
  }

  const auto dir = std::filesystem::current_path() / "acceptance_cli";
  std::filesystem::create_directories(dir);
  const auto regime3 = dir / "regime3.json";
  auto j3 = experiment("regime3", Json::parse(R"({"kind": "constant", "value": 0.5})"));
  j3["output_prefix"] = (dir / "regime3").string();
  write_file(regime3, j3);
  auto bad = j3;
  bad["alpha"] = Json::parse(R"({"kind": "table", "values": [1.5], "flags": []})");
  write_file(dir / "bad_alpha.json", bad);
  const auto r1_bad = dir / "regime1_bad.json";
  write_file(r1_bad, experiment("regime1", Json::parse(R"({"kind": "inverse_square"})")));
  const auto r2 = dir / "regime2.json";
  write_file(r2, experiment("regime2", Json::parse(R"({"kind": "inverse_square"})")));
  const auto r3_bad = dir / "regime3_bad.json";
  write_file(r3_bad, experiment("regime3", Json::parse(R"({"kind": "inverse_square"})")));

  std::ostringstream out, err;
  RunOverrides none, one;
  one.max_iter = 1;
  struct Cli {
    const char* name;
    int got;
    int expected;
  };
  const int regime3_code = run_command(regime3, none, out, err);
  std::ifstream regime_json(dir / "regime3.regime.json");
  const bool verdict_ok = regime_json && Json::parse(regime_json).at("verdict") == "intersection";
  const int bad_alpha_code = run_command(dir / "bad_alpha.json", none, out, err);
  const std::string bad_alpha_err = err.str();
  const Cli cli[] = {
      {"run regime3", regime3_code, exit_code::ok},
      {"run bad alpha", bad_alpha_code, exit_code::error},
      {"run max_iter=1", run_command(regime3, one, out, err), exit_code::unconverged},
      {"run missing file", run_command(dir / "missing.json", none, out, err), exit_code::error},
      {"validate regime1 bad beta", validate_command(r1_bad, out, err), exit_code::violations},
      {"validate regime2", validate_command(r2, out, err), exit_code::ok},
      {"validate regime3 vanishing beta", validate_command(r3_bad, out, err), exit_code::violations},
      {"validate bad alpha", validate_command(dir / "bad_alpha.json", out, err), exit_code::error},
  };
  std::string detail = std::to_string(table_ok) + "/9 validator rows;";
  bool cli_ok = bad_alpha_err.find("alpha") != std::string::npos;
  for (const auto& c : cli) {
    if (c.got != c.expected) {
      cli_ok = false;
      detail += std::string(" ") + c.name + " exit " + std::to_string(c.got) + " expected " +
                std::to_string(c.expected) + ";";
    }
  }
  detail += cli_ok && verdict_ok ? " exit codes and regime3 verdict ok" : " CLI table mismatch";
  report(8, "validator truth table and exit codes", table_ok == 9 && cli_ok && verdict_ok, detail);
}

}  // namespace

// The lemma suite runs last among the trajectory criteria so that its orbit
// check covers every run above.
int main() {
  const std::pair<const char*, void (*)()> criteria[] = {
      {"regime separation", regime_separation}, {"oracle agreement", oracle_agreement},
      {"quasinonexpansive regime 3", quasinonexpansive_regime3}, {"identity suite", identity_suite},
      {"firm/quasi property suite", property_suite}, {"mode equivalence", mode_equivalence},
      {"lemma suite", lemma_suite}, {"validator truth table", validator_table}};
  for (const auto& [name, fn] : criteria) {
    try {
      fn();
    } catch (const std::exception& e) {
      std::printf("[FAIL] %s: exception: %s\n", name, e.what());
      ++failures;
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
