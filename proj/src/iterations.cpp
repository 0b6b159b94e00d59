#include "anchorfp/iterations.hpp"

#include <cmath>

namespace anchorfp {

namespace {

void require_unit(double v, const char* name, const char* where) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ContractViolation(std::string(where) + ": " + name + " must lie in [0,1], got " +
                            std::to_string(v));
  }
}

void require_positive_unit(double v, const char* name, const char* where) {
  if (!(v > 0.0 && v <= 1.0)) {
    throw ContractViolation(std::string(where) + ": " + name + " must lie in (0,1], got " +
                            std::to_string(v));
  }
}

constexpr int kSettledRecords = 10;

}  // namespace

Vector flmr_step(const Vector& u, double alpha, double beta, const Operator& t,
                 const Operator& s, const Vector& x) {
  require_unit(alpha, "alpha", "flmr_step");
  require_unit(beta, "beta", "flmr_step");
  const Vector blended = combine(beta, t(x), s(x));
  return combine(alpha, u, blended);
}

Vector halpern_step(const Vector& u, double alpha, const Operator& t, const Vector& y) {
  require_unit(alpha, "alpha", "halpern_step");
  return combine(alpha, u, t(y));
}

Vector anchored_variable_step(const Vector& u_n, double alpha, const Operator& s,
                              const Vector& x) {
  require_positive_unit(alpha, "alpha", "anchored_variable_step");
  return combine(alpha, u_n, s(x));
}

AnchoredForm reduce_to_anchored(double alpha, double beta, const Vector& u, const Vector& z) {
  require_positive_unit(alpha, "alpha", "reduce_to_anchored");
  require_unit(beta, "beta", "reduce_to_anchored");
  require_same_dim(u, z, "reduce_to_anchored");
  AnchoredForm form;
  form.gamma = alpha + beta - alpha * beta;
  form.u_eff = (alpha * u + ((1.0 - alpha) * beta) * z) / form.gamma;
  return form;
}

const char* to_string(IterationMode mode) {
  switch (mode) {
    case IterationMode::flmr: return "flmr";
    case IterationMode::halpern: return "halpern";
    case IterationMode::anchored_variable: return "anchored_variable";
    case IterationMode::sequence_mapping: return "sequence_mapping";
  }
  return "?";
}

std::optional<IterationMode> iteration_mode_from_string(const std::string& name) {
  for (auto m : {IterationMode::flmr, IterationMode::halpern, IterationMode::anchored_variable,
                 IterationMode::sequence_mapping}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

const char* to_string(TraceStatus status) {
  switch (status) {
    case TraceStatus::converged_target: return "converged_target";
    case TraceStatus::converged_residual: return "converged_residual";
    case TraceStatus::max_iter_reached: return "max_iter_reached";
  }
  return "?";
}

Vector AnchorSequence::at(const Vector& u, long n) const {
  return u + std::pow(static_cast<double>(n), -exponent) * direction;
}

void IterationConfig::validate() const {
  const auto d = u.size();
  if (d < 1) throw ConfigError("anchor must have dimension >= 1", "u");
  if (!u.allFinite()) throw ConfigError("non-finite component", "u");
  if (x1.size() != d) throw ConfigError("dimension differs from u", "x1");
  if (!x1.allFinite()) throw ConfigError("non-finite component", "x1");
  if (max_iter < 1) throw ConfigError("must be >= 1", "max_iter");
  if (!(stop_tol > 0.0)) throw ConfigError("must be positive", "stop_tol");
  if (trace_stride < 1) throw ConfigError("must be >= 1", "trace_stride");

  auto check_op = [&](const std::optional<Operator>& op, const char* key) {
    if (op && op->dimension() != 0 && op->dimension() != d) {
      throw ConfigError("operator dimension differs from u", key);
    }
  };
  check_op(t, "T");
  check_op(s, "S");

  const bool wants_t = mode != IterationMode::anchored_variable;
  const bool wants_s = mode != IterationMode::halpern;
  const bool wants_beta = mode == IterationMode::flmr || mode == IterationMode::sequence_mapping;
  if (wants_t && !t) throw ConfigError("required for mode " + std::string(to_string(mode)), "T");
  if (!wants_t && t) throw ConfigError("not used by mode " + std::string(to_string(mode)), "T");
  if (wants_s && !s) throw ConfigError("required for mode " + std::string(to_string(mode)), "S");
  if (!wants_s && s) throw ConfigError("not used by mode " + std::string(to_string(mode)), "S");
  if (wants_beta && !beta) {
    throw ConfigError("required for mode " + std::string(to_string(mode)), "beta");
  }
  if (!wants_beta && beta) {
    throw ConfigError("not used by mode " + std::string(to_string(mode)), "beta");
  }

  if (mode == IterationMode::anchored_variable) {
    if (alpha(1) <= 0.0 || !alpha.has(ScheduleFlag::strictly_positive)) {
      throw ConfigError("anchored_variable needs alpha in (0,1]", "alpha");
    }
    if (anchor_sequence) {
      if (anchor_sequence->direction.size() != d) {
        throw ConfigError("direction dimension differs from u", "anchor_sequence");
      }
      if (!(anchor_sequence->exponent > 0.0)) {
        throw ConfigError("exponent must be positive", "anchor_sequence");
      }
    }
  } else if (anchor_sequence) {
    throw ConfigError("only used by anchored_variable", "anchor_sequence");
  }

  if (known_target && known_target->size() != d) {
    throw ConfigError("dimension differs from u", "known_target");
  }
  if (witness) {
    if (witness->size() != d) throw ConfigError("dimension differs from u", "witness");
    if ((t && !t->fixes(*witness)) || (s && !s->fixes(*witness))) {
      throw ConfigError("not a common fixed point of T and S", "witness");
    }
  }
  if (mode == IterationMode::sequence_mapping) {
    if (!t->has(Property::quasinonexpansive) || !s->has(Property::quasinonexpansive)) {
      throw ConfigError("sequence_mapping needs quasinonexpansive T and S", "T");
    }
  }
}

namespace {

Vector common_witness(const IterationConfig& config) {
  if (config.witness) return *config.witness;
  const auto d = config.dimension();
  for (const Vector& cand : {config.t->fixed_witness(d), config.s->fixed_witness(d)}) {
    if (config.t->fixes(cand) && config.s->fixes(cand)) return cand;
  }
  throw ConfigError("no common fixed point known for T and S; supply one", "witness");
}

}  // namespace

Trace run_iteration(const IterationConfig& config) {
  config.validate();

  std::optional<Vector> witness;
  if (config.mode == IterationMode::sequence_mapping) witness = common_witness(config);

  Trace trace;
  trace.stride = config.trace_stride;

  Vector x = config.x1;
  int settled = 0;
  for (long n = 1;; ++n) {
    const double alpha = config.alpha(n);
    const std::optional<double> beta =
        config.beta ? std::optional<double>((*config.beta)(n)) : std::nullopt;
    const std::optional<double> dist =
        config.known_target ? std::optional<double>(distance(x, *config.known_target))
                            : std::nullopt;

    TraceStatus status = TraceStatus::max_iter_reached;
    bool stop = false;
    if (dist && *dist < config.stop_tol) {
      status = TraceStatus::converged_target;
      stop = true;
    } else if (n == config.max_iter) {
      stop = true;
    }

    const bool sampled = (n - 1) % config.trace_stride == 0;
    if (sampled || stop) {
      TraceRecord rec;
      rec.n = n;
      rec.x = x;
      if (config.t) rec.residual_t = fixed_point_residual(*config.t, x);
      if (config.s) rec.residual_s = fixed_point_residual(*config.s, x);
      rec.alpha = alpha;
      rec.beta = beta;
      rec.dist_to_target = dist;

      if (sampled) {
        const bool small = rec.residual_t.value_or(0.0) < config.stop_tol &&
                           rec.residual_s.value_or(0.0) < config.stop_tol;
        settled = small ? settled + 1 : 0;
        if (!stop && !config.known_target && settled >= kSettledRecords &&
            alpha < config.stop_tol) {
          status = TraceStatus::converged_residual;
          stop = true;
        }
      }
      trace.records.push_back(std::move(rec));
    }

    if (stop) {
      trace.status = status;
      trace.iterations_run = n;
      trace.final_point = x;
      return trace;
    }

    Vector next;
    switch (config.mode) {
      case IterationMode::flmr:
        next = flmr_step(config.u, alpha, *beta, *config.t, *config.s, x);
        break;
      case IterationMode::halpern:
        next = halpern_step(config.u, alpha, *config.t, x);
        break;
      case IterationMode::anchored_variable: {
        const Vector u_n =
            config.anchor_sequence ? config.anchor_sequence->at(config.u, n) : config.u;
        next = anchored_variable_step(u_n, alpha, *config.s, x);
        break;
      }
      case IterationMode::sequence_mapping: {
        const Operator u_map = convex_combine_op(*beta, *config.t, *config.s, *witness);
        next = combine(alpha, config.u, u_map(x));
        break;
      }
    }
    if (!next.allFinite()) {
      throw NumericFailure("non-finite iterate at n = " + std::to_string(n + 1), n, x);
    }
    x = std::move(next);
  }
}

}  // namespace anchorfp
