#include <cmath>

#include "qle/energy.hpp"
#include "qle/error.hpp"

namespace qle {

namespace {

void check(const PhiInput& in, const char* where) {
  if (!(in.rho > 0.0)) throw InvalidArgument(where, "rho must be positive");
  if (!(in.t > 0.0)) throw InvalidArgument(where, "t must be positive");
  if (!(in.f * in.f <= in.rho * in.rho * (1.0 + 1e-12))) throw InvalidArgument(where, "need f^2 <= rho^2");
}

}  // namespace

// Phi(t) = [-f (1 + rho^2) asinh(f/t) + (rho^2 - f^2) sqrt(t^2 + f^2)]
//          / (rho sqrt(1 + f^2) sqrt(1 + rho^2))  -  rho t / sqrt(1 + rho^2)
double phi(const PhiInput& in) {
  check(in, "energy::phi");
  const double t = in.t, f = in.f, rho = in.rho;
  const double rho2 = rho * rho, f2 = f * f;
  const double root = std::sqrt(1.0 + rho2);
  const double num = -f * (1.0 + rho2) * std::asinh(f / t) + (rho2 - f2) * std::hypot(t, f);
  return num / (rho * std::sqrt(1.0 + f2) * root) - rho * t / root;
}

double dphi_dt(const PhiInput& in) {
  check(in, "energy::dphi_dt");
  const double t = in.t, f = in.f, rho = in.rho;
  const double rho2 = rho * rho, f2 = f * f;
  const double s = std::hypot(t, f);
  const double bracket =
      ((1.0 - t * t) * f2 + rho2 * s * s) / (t * rho2 * std::sqrt(1.0 + f2) * s) - 1.0;
  return bracket * rho / std::sqrt(1.0 + rho2);
}

}  // namespace qle
