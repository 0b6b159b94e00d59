#include "anchorfp/serialization.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace anchorfp {

namespace {

void require_object(const Json& j, const std::string& what) {
  if (!j.is_object()) throw ConfigError("expected a JSON object", what);
}

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed,
                    const std::string& what) {
  for (const auto& [key, value] : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return key == k; });
    if (!known) throw ConfigError("unknown key \"" + key + "\"", what);
  }
}

const Json& field(const Json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) throw ConfigError(std::string("missing \"") + key + "\"", what);
  return j.at(key);
}

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) throw ConfigError("expected a number", what);
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError("expected a finite number", what);
  return v;
}

double number_field(const Json& j, const char* key, const std::string& what) {
  return number(field(j, key, what), what + "." + key);
}

Vector vector_field(const Json& j, const char* key, const std::string& what) {
  try {
    return vector_from_json(field(j, key, what));
  } catch (const ConfigError& e) {
    throw ConfigError(e.what(), what + "." + key);
  }
}

std::string kind_of(const Json& j, const std::string& what) {
  const auto& k = field(j, "kind", what);
  if (!k.is_string()) throw ConfigError("\"kind\" must be a string", what);
  return k.get<std::string>();
}

template <class F>
auto wrap(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what(), what);
  }
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

Json to_json(const Vector& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigError("expected an array of numbers");
  if (j.empty()) throw ConfigError("vector must have dimension >= 1");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConfigError("expected an array of numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  if (!v.allFinite()) throw ConfigError("vector components must be finite");
  return v;
}

Json to_json(const ConvexSet& set) {
  switch (set.kind()) {
    case SetKind::halfspace:
      return {{"kind", "halfspace"}, {"a", to_json(set.normal())}, {"b", set.offset()}};
    case SetKind::ball:
      return {{"kind", "ball"}, {"center", to_json(set.center())}, {"radius", set.radius()}};
    case SetKind::box:
      return {{"kind", "box"}, {"lo", to_json(set.lo())}, {"hi", to_json(set.hi())}};
    case SetKind::intersection: {
      Json children = Json::array();
      for (const auto& c : set.children()) children.push_back(to_json(c));
      return {{"kind", "intersection"}, {"sets", children}};
    }
  }
  return {};
}

ConvexSet convex_set_from_json(const Json& j) {
  const std::string what = "set";
  require_object(j, what);
  const auto kind = kind_of(j, what);
  return wrap(what, [&] {
    if (kind == "halfspace") {
      reject_unknown(j, {"kind", "a", "b"}, what);
      return ConvexSet::halfspace(vector_field(j, "a", what), number_field(j, "b", what));
    }
    if (kind == "ball") {
      reject_unknown(j, {"kind", "center", "radius"}, what);
      return ConvexSet::ball(vector_field(j, "center", what), number_field(j, "radius", what));
    }
    if (kind == "box") {
      reject_unknown(j, {"kind", "lo", "hi"}, what);
      return ConvexSet::box(vector_field(j, "lo", what), vector_field(j, "hi", what));
    }
    if (kind == "intersection") {
      reject_unknown(j, {"kind", "sets"}, what);
      const auto& arr = field(j, "sets", what);
      if (!arr.is_array()) throw ConfigError("\"sets\" must be an array", what);
      std::vector<ConvexSet> children;
      for (const auto& c : arr) children.push_back(convex_set_from_json(c));
      return ConvexSet::intersection(std::move(children));
    }
    throw ConfigError("unknown set kind \"" + kind + "\"", what);
  });
}

Json to_json(const Operator& op) {
  Json params = Json::object();
  switch (op.kind()) {
    case OperatorKind::halfspace_projection:
      params = {{"a", to_json(op.projection_set().normal())}, {"b", op.projection_set().offset()}};
      break;
    case OperatorKind::ball_projection:
      params = {{"center", to_json(op.projection_set().center())},
                {"radius", op.projection_set().radius()}};
      break;
    case OperatorKind::box_projection:
      params = {{"lo", to_json(op.projection_set().lo())}, {"hi", to_json(op.projection_set().hi())}};
      break;
    case OperatorKind::convex_combination:
      params = {{"beta", op.beta()},
                {"T", to_json(op.first())},
                {"S", to_json(op.second())},
                {"witness", to_json(op.witness())}};
      break;
    case OperatorKind::radial_oscillator:
    case OperatorKind::identity: break;
  }
  Json props = Json::array();
  for (auto p : op.properties().list()) props.push_back(to_string(p));
  return {{"kind", to_string(op.kind())}, {"params", params}, {"properties", props}};
}

Operator operator_from_json(const Json& j) {
  const std::string what = "operator";
  require_object(j, what);
  reject_unknown(j, {"kind", "params", "properties"}, what);
  const auto kind = kind_of(j, what);

  std::optional<PropertySet> declared;
  if (j.contains("properties")) {
    const auto& arr = j.at("properties");
    if (!arr.is_array()) throw ConfigError("\"properties\" must be an array", what);
    PropertySet props;
    for (const auto& name : arr) {
      const auto p = name.is_string() ? property_from_string(name.get<std::string>())
                                      : std::nullopt;
      if (!p) throw ConfigError("unknown property " + name.dump(), what);
      props.insert(*p);
    }
    declared = props;
  }
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  require_object(params, what + ".params");
  const std::string pw = what + ".params";

  return wrap(what, [&] {
    if (kind == "identity") {
      reject_unknown(params, {}, pw);
      return Operator::identity(declared);
    }
    if (kind == "radial_oscillator") {
      reject_unknown(params, {}, pw);
      return Operator::radial_oscillator(declared);
    }
    if (kind == "halfspace_projection") {
      reject_unknown(params, {"a", "b"}, pw);
      return Operator::halfspace_projection(vector_field(params, "a", pw),
                                            number_field(params, "b", pw), declared);
    }
    if (kind == "ball_projection") {
      reject_unknown(params, {"center", "radius"}, pw);
      return Operator::ball_projection(vector_field(params, "center", pw),
                                       number_field(params, "radius", pw), declared);
    }
    if (kind == "box_projection") {
      reject_unknown(params, {"lo", "hi"}, pw);
      return Operator::box_projection(vector_field(params, "lo", pw), vector_field(params, "hi", pw),
                                      declared);
    }
    if (kind == "convex_combination") {
      reject_unknown(params, {"beta", "T", "S", "witness"}, pw);
      return convex_combine_op(number_field(params, "beta", pw),
                               operator_from_json(field(params, "T", pw)),
                               operator_from_json(field(params, "S", pw)),
                               vector_field(params, "witness", pw), declared);
    }
    throw ConfigError("unknown operator kind \"" + kind + "\"", what);
  });
}

namespace {

Json flags_json(const FlagSet& flags) {
  Json arr = Json::array();
  for (auto f : flags.list()) arr.push_back(to_string(f));
  return arr;
}

FlagSet flags_from_json(const Json& arr, const std::string& what) {
  if (!arr.is_array()) throw ConfigError("flags must be an array", what);
  FlagSet flags;
  for (const auto& name : arr) {
    const auto f = name.is_string() ? schedule_flag_from_string(name.get<std::string>())
                                    : std::nullopt;
    if (!f) throw ConfigError("unknown flag " + name.dump(), what);
    flags.insert(*f);
  }
  return flags;
}

}  // namespace

Json to_json(const Schedule& s) {
  switch (s.kind()) {
    case ScheduleKind::harmonic:
      return {{"kind", "harmonic"}, {"a", s.a()}, {"c", s.c()}, {"p", s.p()}};
    case ScheduleKind::constant: return {{"kind", "constant"}, {"value", s.constant_value()}};
    case ScheduleKind::inverse_square: return {{"kind", "inverse_square"}};
    case ScheduleKind::one_minus_inverse_square: return {{"kind", "one_minus_inverse_square"}};
    case ScheduleKind::table: {
      Json j = {{"kind", "table"}, {"values", s.values()}, {"flags", flags_json(s.flags())}};
      if (s.declared_complement_flags()) {
        j["complement_flags"] = flags_json(*s.declared_complement_flags());
      }
      return j;
    }
  }
  return {};
}

Schedule schedule_from_json(const Json& j) {
  const std::string what = "schedule";
  require_object(j, what);
  const auto kind = kind_of(j, what);
  return wrap(what, [&] {
    if (kind == "harmonic") {
      reject_unknown(j, {"kind", "a", "c", "p"}, what);
      const double a = j.contains("a") ? number_field(j, "a", what) : 1.0;
      const double c = j.contains("c") ? number_field(j, "c", what) : 0.0;
      const double p = j.contains("p") ? number_field(j, "p", what) : 1.0;
      return Schedule::harmonic(a, c, p);
    }
    if (kind == "constant") {
      reject_unknown(j, {"kind", "value"}, what);
      return Schedule::constant(number_field(j, "value", what));
    }
    if (kind == "inverse_square") {
      reject_unknown(j, {"kind"}, what);
      return Schedule::inverse_square();
    }
    if (kind == "one_minus_inverse_square") {
      reject_unknown(j, {"kind"}, what);
      return Schedule::one_minus_inverse_square();
    }
    if (kind == "table") {
      reject_unknown(j, {"kind", "values", "flags", "complement_flags"}, what);
      const auto& arr = field(j, "values", what);
      if (!arr.is_array()) throw ConfigError("\"values\" must be an array", what);
      std::vector<double> values;
      for (const auto& v : arr) values.push_back(number(v, what + ".values"));
      std::optional<FlagSet> complement;
      if (j.contains("complement_flags")) {
        complement = flags_from_json(j.at("complement_flags"), what + ".complement_flags");
      }
      return Schedule::table(std::move(values), flags_from_json(field(j, "flags", what), what),
                             complement);
    }
    throw ConfigError("unknown schedule kind \"" + kind + "\"", what);
  });
}

Json to_json(const OracleResult& r) {
  return {{"point", to_json(r.point)},
          {"iterations_used", r.iterations_used},
          {"certificate_gap", std::isfinite(r.certificate_gap) ? Json(r.certificate_gap)
                                                               : Json(nullptr)},
          {"status", to_string(r.status)}};
}

Json to_json(const ValidationReport& r) {
  return {{"regime", to_string(r.regime)},
          {"valid", r.valid()},
          {"violations", r.violations},
          {"notes", r.notes}};
}

Json to_json(const RegimeReport& r) {
  return {{"dist_to_pt", r.dist_to_pt},
          {"dist_to_ps", r.dist_to_ps},
          {"dist_to_pf", r.dist_to_pf},
          {"verdict", to_string(r.verdict)},
          {"margins", {r.margins.first, r.margins.second}}};
}

Json to_json(const LiuLemmaReport& r) {
  return {{"xi_final", r.xi_final},
          {"n", r.n},
          {"alpha_diverges", r.alpha_diverges},
          {"gamma_summable", r.gamma_summable},
          {"hypothesis_violations", r.hypothesis_violations},
          {"decade_drop", r.decade_drop}};
}

Json trace_summary(const Trace& trace) {
  return {{"status", to_string(trace.status)},
          {"iterations_run", trace.iterations_run},
          {"final_point", to_json(trace.final_point)}};
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  const auto d = trace.final_point.size();
  out << "n";
  for (Eigen::Index i = 1; i <= d; ++i) out << ",x" << i;
  out << ",residual_T,residual_S,alpha,beta,dist_to_target\n";
  auto opt = [&](const std::optional<double>& v) {
    out << ',';
    if (v) out << format_number(*v);
  };
  for (const auto& r : trace.records) {
    out << r.n;
    for (Eigen::Index i = 0; i < r.x.size(); ++i) out << ',' << format_number(r.x[i]);
    opt(r.residual_t);
    opt(r.residual_s);
    out << ',' << format_number(r.alpha);
    opt(r.beta);
    opt(r.dist_to_target);
    out << '\n';
  }
}

void write_gap_csv(std::ostream& out, const CouplingReport& report) {
  out << "n,gap\n";
  for (const auto& g : report.gaps) out << g.n << ',' << format_number(g.gap) << '\n';
}

}  // namespace anchorfp
