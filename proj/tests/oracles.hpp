#pragma once

// Reference values computed independently of the library: harmonics from
// GSL's associated Legendre functions and nested adaptive quadrature.

#include <cmath>
#include <functional>
#include <numbers>
#include <span>

#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_legendre.h>

namespace oracle {

// Real orthonormal harmonic in the library's convention (no Condon-Shortley
// phase). GSL's sphPlm carries the phase, so it is undone here.
inline double real_harmonic(int l, int m, double theta, double phi) {
  const int am = std::abs(m);
  double p = gsl_sf_legendre_sphPlm(l, am, std::cos(theta));
  if (am % 2 == 1) p = -p;
  if (m > 0) return std::numbers::sqrt2 * p * std::cos(m * phi);
  if (m < 0) return std::numbers::sqrt2 * p * std::sin(am * phi);
  return p;
}

inline double series(std::span<const double> c, double theta, double phi) {
  double s = 0.0;
  for (int l = 0; l * l < static_cast<int>(c.size()); ++l) {
    for (int m = -l; m <= l; ++m) {
      const std::size_t i = static_cast<std::size_t>(l * l + l + m);
      if (i < c.size() && c[i] != 0.0) s += c[i] * real_harmonic(l, m, theta, phi);
    }
  }
  return s;
}

namespace detail {
inline double trampoline(double x, void* p) {
  return (*static_cast<const std::function<double(double)>*>(p))(x);
}

inline double adaptive(const std::function<double(double)>& f, double a, double b, double tol) {
  gsl_integration_workspace* w = gsl_integration_workspace_alloc(2000);
  gsl_function F{&trampoline, const_cast<std::function<double(double)>*>(&f)};
  double result = 0.0, err = 0.0;
  gsl_integration_qags(&F, a, b, 0.0, tol, 2000, w, &result, &err);
  gsl_integration_workspace_free(w);
  return result;
}
}  // namespace detail

// int_0^pi int_0^2pi g(theta, phi) dphi dtheta by nested adaptive quadrature.
inline double sphere_integral(const std::function<double(double, double)>& g, double tol = 1e-12) {
  const std::function<double(double)> outer = [&](double theta) {
    const std::function<double(double)> inner = [&](double phi) { return g(theta, phi); };
    return detail::adaptive(inner, 0.0, 2.0 * std::numbers::pi, tol);
  };
  return detail::adaptive(outer, 0.0, std::numbers::pi, tol);
}

// Dense fixed Gauss-Legendre in cos(theta) times the trapezoid rule in phi.
inline double dense_round_integral(const std::function<double(double, double)>& g, int n = 96) {
  gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n));
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = 0.0, w = 0.0;
    gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(i), &x, &w, t);
    for (int k = 0; k < 2 * n; ++k) {
      s += w * (std::numbers::pi / n) * g(std::acos(x), k * std::numbers::pi / n);
    }
  }
  gsl_integration_glfixed_table_free(t);
  return s;
}

}  // namespace oracle
