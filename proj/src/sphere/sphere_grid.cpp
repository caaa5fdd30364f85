#include "qle/sphere_grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <gsl/gsl_integration.h>

#include "qle/error.hpp"
#include "qle/simd.hpp"

namespace qle {

namespace {

constexpr double kPi = std::numbers::pi;

// Fully normalised associated Legendre functions (integral of Pbar^2 over
// sin t dt equals 1/(2 pi)), no Condon-Shortley phase, m-major layout.
void fill_legendre(int L, double x, double s, const std::vector<int>& offset, double* out) {
  double pmm = 1.0 / std::sqrt(4.0 * kPi);
  for (int m = 0; m <= L; ++m) {
    if (m > 0) pmm *= std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
    double* row = out + offset[m];
    row[0] = pmm;
    if (m + 1 <= L) row[1] = std::sqrt(2.0 * m + 3.0) * x * pmm;
    for (int l = m + 2; l <= L; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
      const double b = std::sqrt((static_cast<double>(l - 1) * (l - 1) - static_cast<double>(m) * m) /
                                 (4.0 * (l - 1) * (l - 1) - 1.0));
      row[l - m] = a * (x * row[l - 1 - m] - b * row[l - 2 - m]);
    }
  }
}

// d/dtheta via the pole-free three-term relation
//   dPbar_l0 = -sqrt(l(l+1)) Pbar_l1
//   dPbar_lm = 1/2 [ sqrt((l+m)(l-m+1)) Pbar_l,m-1 - sqrt((l-m)(l+m+1)) Pbar_l,m+1 ]
void differentiate_legendre(int L, const std::vector<int>& offset, const double* in, double* out) {
  auto at = [&](int l, int m) { return (m > l) ? 0.0 : in[offset[m] + (l - m)]; };
  for (int m = 0; m <= L; ++m) {
    for (int l = m; l <= L; ++l) {
      double d;
      if (m == 0) {
        d = -std::sqrt(static_cast<double>(l) * (l + 1)) * at(l, 1);
      } else {
        d = 0.5 * (std::sqrt(static_cast<double>(l + m) * (l - m + 1)) * at(l, m - 1) -
                   std::sqrt(static_cast<double>(l - m) * (l + m + 1)) * at(l, m + 1));
      }
      out[offset[m] + (l - m)] = d;
    }
  }
}

}  // namespace

GridPtr SphereGrid::make(int band_limit) {
  if (band_limit < 4) {
    throw InvalidArgument("sphere-core::make_grid",
                          "band_limit must be >= 4, got " + std::to_string(band_limit));
  }
  return GridPtr(new SphereGrid(band_limit));
}

SphereGrid::SphereGrid(int L)
    : band_limit_(L), n_theta_(L + 1), n_phi_(2 * L + 1), n_m_(2 * L + 1) {
  m_offset_.resize(L + 1);
  int off = 0;
  for (int m = 0; m <= L; ++m) {
    m_offset_[m] = off;
    off += L + 1 - m;
  }
  n_legendre_ = static_cast<std::size_t>(off);

  signed_offset_.resize(n_m_);
  off = 0;
  for (int m = -L; m <= L; ++m) {
    signed_offset_[m + L] = off;
    off += L + 1 - std::abs(m);
  }

  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(n_theta_);
  theta_.resize(n_theta_);
  cos_theta_.resize(n_theta_);
  sin_theta_.resize(n_theta_);
  gl_weight_.resize(n_theta_);
  for (int i = 0; i < n_theta_; ++i) {
    double xi = 0.0, wi = 0.0;
    gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(i), &xi, &wi, table);
    // gsl returns ascending x; store ascending theta (descending x)
    const int j = n_theta_ - 1 - i;
    cos_theta_[j] = xi;
    sin_theta_[j] = std::sqrt((1.0 - xi) * (1.0 + xi));
    theta_[j] = std::acos(xi);
    gl_weight_[j] = wi;
  }
  gsl_integration_glfixed_table_free(table);

  phi_.resize(n_phi_);
  for (int k = 0; k < n_phi_; ++k) phi_[k] = 2.0 * kPi * k / n_phi_;

  const std::size_t n = size();
  weights_.resize(n);
  position_.resize(n);
  e_theta_.resize(n);
  e_phi_.resize(n);
  for (int j = 0; j < n_theta_; ++j) {
    for (int k = 0; k < n_phi_; ++k) {
      const std::size_t id = node(j, k);
      const double c = cos_theta_[j], s = sin_theta_[j];
      const double cp = std::cos(phi_[k]), sp = std::sin(phi_[k]);
      weights_[id] = gl_weight_[j] * 2.0 * kPi / n_phi_;
      position_[id] = Eigen::Vector3d(s * cp, s * sp, c);
      e_theta_[id] = Eigen::Vector3d(c * cp, c * sp, -s);
      e_phi_[id] = Eigen::Vector3d(-sp, cp, 0.0);
    }
  }

  p_.resize(static_cast<std::size_t>(n_theta_) * n_legendre_);
  dp_.resize(p_.size());
  d2p_.resize(p_.size());
  for (int j = 0; j < n_theta_; ++j) {
    double* p = p_.data() + static_cast<std::size_t>(j) * n_legendre_;
    double* dp = dp_.data() + static_cast<std::size_t>(j) * n_legendre_;
    double* d2p = d2p_.data() + static_cast<std::size_t>(j) * n_legendre_;
    fill_legendre(L, cos_theta_[j], sin_theta_[j], m_offset_, p);
    differentiate_legendre(L, m_offset_, p, dp);
    differentiate_legendre(L, m_offset_, dp, d2p);
  }

  const double r2 = std::sqrt(2.0);
  trig_.resize(static_cast<std::size_t>(n_phi_) * n_m_);
  dtrig_.resize(trig_.size());
  trig_by_m_.resize(trig_.size());
  for (int k = 0; k < n_phi_; ++k) {
    for (int m = -L; m <= L; ++m) {
      double t, dt;
      if (m > 0) {
        t = r2 * std::cos(m * phi_[k]);
        dt = -m * r2 * std::sin(m * phi_[k]);
      } else if (m == 0) {
        t = 1.0;
        dt = 0.0;
      } else {
        t = r2 * std::sin(-m * phi_[k]);
        dt = -m * r2 * std::cos(-m * phi_[k]);
      }
      trig_[static_cast<std::size_t>(k) * n_m_ + (m + L)] = t;
      dtrig_[static_cast<std::size_t>(k) * n_m_ + (m + L)] = dt;
      trig_by_m_[static_cast<std::size_t>(m + L) * n_phi_ + k] = t;
    }
  }
}

void SphereGrid::gather_m_major(std::span<const double> coeffs, std::vector<double>& out) const {
  if (coeffs.size() != n_coeffs()) {
    throw InvalidArgument("sphere-core::synthesize",
                          "expected " + std::to_string(n_coeffs()) + " coefficients, got " +
                              std::to_string(coeffs.size()));
  }
  const int L = band_limit_;
  out.assign(n_coeffs(), 0.0);
  for (int m = -L; m <= L; ++m) {
    double* block = out.data() + signed_offset_[m + L];
    for (int l = std::abs(m); l <= L; ++l) block[l - std::abs(m)] = coeffs[coeff_index(l, m)];
  }
}

std::vector<double> SphereGrid::synthesize(std::span<const double> coeffs) const {
  return synthesize_derivatives(coeffs, false).value;
}

SpectralSamples SphereGrid::synthesize_derivatives(std::span<const double> coeffs,
                                                   bool second_order) const {
  const auto& kt = simd::kernels();
  const int L = band_limit_;
  std::vector<double> cm;
  gather_m_major(coeffs, cm);

  const std::size_t n = size();
  SpectralSamples out;
  out.value.resize(n);
  out.d_theta.resize(n);
  out.d_phi_hat.resize(n);
  if (second_order) {
    out.d_theta_theta.resize(n);
    out.d_theta_phi_hat.resize(n);
    out.d_phi_phi_hat.resize(n);
  }

  std::vector<double> g(n_m_), gt(n_m_), gtt(n_m_), m2g(n_m_);
  for (int j = 0; j < n_theta_; ++j) {
    for (int m = -L; m <= L; ++m) {
      const int am = std::abs(m);
      const std::size_t len = static_cast<std::size_t>(L + 1 - am);
      const double* c = cm.data() + signed_offset_[m + L];
      g[m + L] = kt.dot(c, legendre_row(p_, j, am), len);
      gt[m + L] = kt.dot(c, legendre_row(dp_, j, am), len);
      if (second_order) {
        gtt[m + L] = kt.dot(c, legendre_row(d2p_, j, am), len);
        m2g[m + L] = -static_cast<double>(m) * m * g[m + L];
      }
    }
    const double s = sin_theta_[j];
    for (int k = 0; k < n_phi_; ++k) {
      const std::size_t id = node(j, k);
      const double* t = trig_.data() + static_cast<std::size_t>(k) * n_m_;
      const double* dt = dtrig_.data() + static_cast<std::size_t>(k) * n_m_;
      out.value[id] = kt.dot(g.data(), t, n_m_);
      out.d_theta[id] = kt.dot(gt.data(), t, n_m_);
      out.d_phi_hat[id] = kt.dot(g.data(), dt, n_m_) / s;
      if (second_order) {
        out.d_theta_theta[id] = kt.dot(gtt.data(), t, n_m_);
        out.d_theta_phi_hat[id] = kt.dot(gt.data(), dt, n_m_) / s;
        out.d_phi_phi_hat[id] = kt.dot(m2g.data(), t, n_m_) / (s * s);
      }
    }
  }
  return out;
}

std::vector<double> SphereGrid::analyze(std::span<const double> values) const {
  if (values.size() != size()) {
    throw InvalidArgument("sphere-core::analyze", "expected " + std::to_string(size()) +
                                                      " nodal values, got " +
                                                      std::to_string(values.size()));
  }
  const auto& kt = simd::kernels();
  const int L = band_limit_;
  std::vector<double> cm(n_coeffs(), 0.0);
  for (int j = 0; j < n_theta_; ++j) {
    const double* row = values.data() + node(j, 0);
    const double w = gl_weight_[j] * 2.0 * kPi / n_phi_;
    for (int m = -L; m <= L; ++m) {
      const int am = std::abs(m);
      const double gm = w * kt.dot(row, trig_by_m_.data() + static_cast<std::size_t>(m + L) * n_phi_, n_phi_);
      kt.axpy(gm, legendre_row(p_, j, am), cm.data() + signed_offset_[m + L],
              static_cast<std::size_t>(L + 1 - am));
    }
  }
  std::vector<double> coeffs(n_coeffs());
  for (int m = -L; m <= L; ++m) {
    const double* block = cm.data() + signed_offset_[m + L];
    for (int l = std::abs(m); l <= L; ++l) coeffs[coeff_index(l, m)] = block[l - std::abs(m)];
  }
  return coeffs;
}

double SphereGrid::basis(int l, int m, std::size_t n) const {
  const int j = static_cast<int>(n / n_phi_), k = static_cast<int>(n % n_phi_);
  const int am = std::abs(m);
  return legendre_row(p_, j, am)[l - am] * trig(k, m);
}

double SphereGrid::basis_d_theta(int l, int m, std::size_t n) const {
  const int j = static_cast<int>(n / n_phi_), k = static_cast<int>(n % n_phi_);
  const int am = std::abs(m);
  return legendre_row(dp_, j, am)[l - am] * trig(k, m);
}

double SphereGrid::basis_d_phi_hat(int l, int m, std::size_t n) const {
  const int j = static_cast<int>(n / n_phi_), k = static_cast<int>(n % n_phi_);
  const int am = std::abs(m);
  return legendre_row(p_, j, am)[l - am] * dtrig(k, m) / sin_theta_[j];
}

}  // namespace qle
