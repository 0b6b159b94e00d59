#pragma once

#include <iosfwd>

#include <json.hpp>

#include "anchorfp/diagnostics.hpp"
#include "anchorfp/oracle.hpp"

namespace anchorfp {

using Json = nlohmann::json;

// Parsing throws ConfigError naming the offending key; nested errors are
// prefixed by the enclosing key by the caller.

Json to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json to_json(const ConvexSet& set);
ConvexSet convex_set_from_json(const Json& j);

/// {"kind": ..., "params": {...}, "properties": [...]}
Json to_json(const Operator& op);
Operator operator_from_json(const Json& j);

Json to_json(const Schedule& s);
Schedule schedule_from_json(const Json& j);

Json to_json(const OracleResult& r);
Json to_json(const ValidationReport& r);
Json to_json(const RegimeReport& r);
Json to_json(const LiuLemmaReport& r);

/// {status, iterations_run, final_point}
Json trace_summary(const Trace& trace);

/// Header `n,x1,...,xd,residual_T,residual_S,alpha,beta,dist_to_target`;
/// absent values are written as empty fields.
void write_trace_csv(std::ostream& out, const Trace& trace);

/// Header `n,gap`.
void write_gap_csv(std::ostream& out, const CouplingReport& report);

/// Shortest decimal text that round-trips the double.
std::string format_number(double v);

}  // namespace anchorfp
