#include <cmath>
#include <limits>
#include <random>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <spdlog/spdlog.h>

#include "qle/error.hpp"
#include "qle/optimizer.hpp"

namespace qle {

namespace {

struct Start {
  Eigen::Vector3d a;
  const char* label;
};

struct RunResult {
  Eigen::Vector3d a;
  double value;
  int iterations;
  bool converged;
};

double gsl_energy(const gsl_vector* v, void* params) {
  const auto* energy = static_cast<const EnergyFunctional*>(params);
  const Eigen::Vector3d a(gsl_vector_get(v, 0), gsl_vector_get(v, 1), gsl_vector_get(v, 2));
  try {
    return energy->energy(a);
  } catch (const NumericalDomain&) {
    return std::numeric_limits<double>::infinity();
  }
}

RunResult run_simplex(const EnergyFunctional& energy, const Eigen::Vector3d& a0, int max_iterations,
                      const MinimizerOptions& opt) {
  static const gsl_error_handler_t* previous_handler = gsl_set_error_handler_off();
  (void)previous_handler;
  gsl_multimin_function fn{&gsl_energy, 3, const_cast<EnergyFunctional*>(&energy)};
  gsl_vector* x = gsl_vector_alloc(3);
  gsl_vector* step = gsl_vector_alloc(3);
  for (int i = 0; i < 3; ++i) {
    gsl_vector_set(x, i, a0[i]);
    gsl_vector_set(step, i, opt.initial_step);
  }
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 3);
  gsl_multimin_fminimizer_set(s, &fn, x, step);

  int iter = 0;
  bool converged = false;
  double previous = s->fval;
  int quiet = 0;
  while (iter < max_iterations) {
    ++iter;
    if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
    // both the simplex and the best value must have settled
    quiet = std::abs(previous - s->fval) <= opt.value_tol ? quiet + 1 : 0;
    previous = s->fval;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), opt.size_tol) == GSL_SUCCESS &&
        quiet >= 3) {
      converged = true;
      break;
    }
  }
  RunResult r{Eigen::Vector3d(gsl_vector_get(s->x, 0), gsl_vector_get(s->x, 1), gsl_vector_get(s->x, 2)),
              s->fval, iter, converged};
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(step);
  gsl_vector_free(x);
  return r;
}

}  // namespace

const char* status_name(InfimumStatus s) {
  switch (s) {
    case InfimumStatus::closed_form: return "closed-form";
    case InfimumStatus::numeric_only: return "numeric-only";
    case InfimumStatus::unbounded_below_suspected: return "unbounded-below-suspected";
  }
  return "unknown";
}

InfimumResult closed_form_infimum(const FourVectorW& W, double C) {
  (void)C;
  InfimumResult res;
  switch (W.causal) {
    case CausalType::timelike_future: {
      const double norm = std::sqrt(-W.minkowski_square());
      res.status = InfimumStatus::closed_form;
      res.a_star = W.V / norm;
      res.value = norm;
      res.closed_form_value = norm;
      break;
    }
    case CausalType::null:
      res.status = InfimumStatus::numeric_only;
      res.value = std::numeric_limits<double>::quiet_NaN();
      break;
    case CausalType::spacelike:
    case CausalType::timelike_past:
      res.status = InfimumStatus::unbounded_below_suspected;
      res.value = -std::numeric_limits<double>::infinity();
      break;
  }
  return res;
}

InfimumResult numeric_infimum(const EnergyFunctional& energy, const Eigen::Vector3d& a0,
                              const MinimizerOptions& options) {
  const FourVectorW& W = energy.W();
  const InfimumResult closed = closed_form_infimum(W, energy.C());
  const bool timelike = W.causal == CausalType::timelike_future;
  const int cap = timelike ? options.max_iterations : options.diagnostic_iterations;

  std::mt19937_64 rng(options.seed);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const Eigen::Vector3d random(2.0 * unit() - 1.0, 2.0 * unit() - 1.0, 2.0 * unit() - 1.0);
  Eigen::Vector3d towards_V = Eigen::Vector3d::Zero();
  if (timelike) {
    towards_V = closed.a_star;
  } else if (W.V.norm() > 0.0) {
    towards_V = W.V / W.V.norm();
  }

  const Start starts[] = {{a0, "a0"}, {Eigen::Vector3d::Zero(), "origin"}, {towards_V, "V"}, {random, "random"}};
  RunResult best{a0, std::numeric_limits<double>::infinity(), 0, false};
  int total = 0;
  for (const Start& st : starts) {
    const RunResult r = run_simplex(energy, st.a, cap, options);
    total += r.iterations;
    spdlog::debug("optimizer::numeric_infimum: start {} -> E = {:.12g} after {} iterations{}", st.label,
                  r.value, r.iterations, r.converged ? "" : " (not converged)");
    if (r.value < best.value) best = r;
  }

  InfimumResult res;
  res.a_star = best.a;
  res.value = best.value;
  res.iterations = total;
  res.closed_form_value = closed.closed_form_value;
  if (!best.converged) {
    res.status = timelike || W.causal == CausalType::null ? InfimumStatus::numeric_only
                                                          : InfimumStatus::unbounded_below_suspected;
  } else {
    res.status = timelike ? InfimumStatus::closed_form
                          : (W.causal == CausalType::null ? InfimumStatus::numeric_only
                                                          : InfimumStatus::unbounded_below_suspected);
  }
  return res;
}

InfimumResult numeric_infimum(const EmbeddedSurface& X, const SurfaceData& data, const Eigen::Vector3d& a0,
                              const MinimizerOptions& options) {
  return numeric_infimum(EnergyFunctional(X, data), a0, options);
}

}  // namespace qle
