#pragma once

// Gauss-Legendre (colatitude) x uniform (longitude) grid on S^2 together with
// the real spherical-harmonic transforms used by every differential operator.
//
// Real harmonic ordering, shared by every serialized coefficient list:
//   index(l, m) = l*l + l + m,   l = 0..L,  m = -l..l
//   Y_lm = Pbar_l|m|(cos t) * { sqrt2 cos(m p)   m > 0
//                             { 1                m = 0
//                             { sqrt2 sin(|m| p) m < 0
// with Pbar fully normalised (no Condon-Shortley phase), so the Y_lm are
// orthonormal on the unit round sphere.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace qle {

class SphereGrid;
using GridPtr = std::shared_ptr<const SphereGrid>;

/// Nodal samples of a function and its round-frame derivatives. "hat"
/// quantities are divided by powers of sin(theta) so that they are the
/// components along the unit vectors e_theta, e_phi:
///   d_phi_hat       = (1/sin t) d f/d phi
///   d_theta_phi_hat = (1/sin t) d^2 f/d theta d phi
///   d_phi_phi_hat   = (1/sin^2 t) d^2 f/d phi^2
struct SpectralSamples {
  std::vector<double> value;
  std::vector<double> d_theta;
  std::vector<double> d_phi_hat;
  std::vector<double> d_theta_theta;
  std::vector<double> d_theta_phi_hat;
  std::vector<double> d_phi_phi_hat;
};

class SphereGrid {
 public:
  /// Builds the grid for band limit L >= 4: (L+1) Gauss-Legendre colatitudes
  /// and (2L+1) equispaced longitudes. Throws InvalidArgument for L < 4.
  static GridPtr make(int band_limit);

  int band_limit() const { return band_limit_; }
  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  std::size_t size() const { return static_cast<std::size_t>(n_theta_) * n_phi_; }
  std::size_t n_coeffs() const { return static_cast<std::size_t>(band_limit_ + 1) * (band_limit_ + 1); }
  std::size_t node(int j, int k) const { return static_cast<std::size_t>(j) * n_phi_ + k; }

  static std::size_t coeff_index(int l, int m) {
    return static_cast<std::size_t>(l * l + l + m);
  }

  double theta(int j) const { return theta_[j]; }
  double cos_theta(int j) const { return cos_theta_[j]; }
  double sin_theta(int j) const { return sin_theta_[j]; }
  double phi(int k) const { return phi_[k]; }
  double sin_theta_at(std::size_t n) const { return sin_theta_[n / n_phi_]; }

  /// Quadrature weights for the round measure sin t dt dp (sum = 4 pi).
  std::span<const double> weights() const { return weights_; }

  /// Unit position y and round orthonormal frame (e_theta, e_phi) at node n.
  const Eigen::Vector3d& unit_position(std::size_t n) const { return position_[n]; }
  const Eigen::Vector3d& e_theta(std::size_t n) const { return e_theta_[n]; }
  const Eigen::Vector3d& e_phi(std::size_t n) const { return e_phi_[n]; }

  std::vector<double> synthesize(std::span<const double> coeffs) const;
  /// Nodal values plus first (and optionally second) round-frame derivatives.
  SpectralSamples synthesize_derivatives(std::span<const double> coeffs, bool second_order) const;
  /// Quadrature projection onto Y_lm, l <= L. Exact for band-limited input.
  std::vector<double> analyze(std::span<const double> values) const;

  /// Y_lm, dY/dtheta and (1/sin t) dY/dphi at node n (used for Jacobians).
  double basis(int l, int m, std::size_t n) const;
  double basis_d_theta(int l, int m, std::size_t n) const;
  double basis_d_phi_hat(int l, int m, std::size_t n) const;

  bool same_as(const SphereGrid& other) const { return band_limit_ == other.band_limit_; }

 private:
  explicit SphereGrid(int band_limit);

  // Legendre tables are m-major: offset(m) + (l - m).
  std::size_t legendre_offset(int m) const { return static_cast<std::size_t>(m_offset_[m]); }
  std::size_t legendre_size() const { return n_legendre_; }
  const double* legendre_row(const std::vector<double>& table, int j, int m) const {
    return table.data() + static_cast<std::size_t>(j) * n_legendre_ + m_offset_[m];
  }
  double trig(int k, int m) const { return trig_[static_cast<std::size_t>(k) * n_m_ + (m + band_limit_)]; }
  double dtrig(int k, int m) const { return dtrig_[static_cast<std::size_t>(k) * n_m_ + (m + band_limit_)]; }

  void gather_m_major(std::span<const double> coeffs, std::vector<double>& out) const;

  int band_limit_;
  int n_theta_;
  int n_phi_;
  int n_m_;  // 2L + 1 signed orders
  std::size_t n_legendre_;
  std::vector<int> m_offset_;
  std::vector<int> signed_offset_;  // block of signed m in the m-major coefficient buffer

  std::vector<double> theta_, cos_theta_, sin_theta_, gl_weight_, phi_;
  std::vector<double> weights_;
  std::vector<Eigen::Vector3d> position_, e_theta_, e_phi_;

  std::vector<double> p_, dp_, d2p_;      // [j][m-major (m,l)]
  std::vector<double> trig_, dtrig_;      // [k][m + L]
  std::vector<double> trig_by_m_;         // [m + L][k]
};

}  // namespace qle
