#pragma once

#include <stdexcept>
#include <string>

namespace qle {

enum class ErrorKind {
  invalid_argument,
  config,
  singular_metric,
  not_convex,
  not_spacelike,
  singular_point,
  numerical_domain,
  no_convergence,
};

/// Base of every library error. The message is prefixed with
/// "<module>::<operation>: " so the CLI can report where it failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), kind_(kind), where_(where) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& where() const noexcept { return where_; }

 private:
  ErrorKind kind_;
  std::string where_;
};

#define QLE_DEFINE_ERROR(Name, Kind)                          \
  class Name : public Error {                                 \
   public:                                                    \
    Name(const std::string& where, const std::string& what)   \
        : Error(ErrorKind::Kind, where, what) {}              \
  };

QLE_DEFINE_ERROR(InvalidArgument, invalid_argument)
QLE_DEFINE_ERROR(ConfigError, config)
QLE_DEFINE_ERROR(SingularMetric, singular_metric)
QLE_DEFINE_ERROR(NotConvex, not_convex)
QLE_DEFINE_ERROR(NotSpacelike, not_spacelike)
QLE_DEFINE_ERROR(SingularPoint, singular_point)
QLE_DEFINE_ERROR(NumericalDomain, numerical_domain)

#undef QLE_DEFINE_ERROR

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& where, const std::string& what, double best_residual)
      : Error(ErrorKind::no_convergence, where, what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

/// sqrt that tolerates floating-point dust below zero (>= -1e-12) and throws
/// NumericalDomain for anything more negative.
double guarded_sqrt(double x, const char* where);

}  // namespace qle
