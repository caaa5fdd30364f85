#include "qle/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/SVD>
#include <spdlog/spdlog.h>

#include "qle/error.hpp"

// OpenBLAS entry point (Fortran calling convention).
extern "C" {
void dsyrk_(const char* uplo, const char* trans, const int* n, const int* k, const double* alpha, const double* a,
            const int* lda, const double* beta, double* c, const int* ldc, std::size_t, std::size_t);
}

namespace qle {

namespace {

constexpr const char* kWhere = "embedding::solve_weyl";

// Lower triangle of J^T J.
Eigen::MatrixXd normal_matrix(const Eigen::MatrixXd& J) {
  const int n = static_cast<int>(J.cols()), k = static_cast<int>(J.rows());
  const double one = 1.0, zero = 0.0;
  Eigen::MatrixXd A(n, n);
  dsyrk_("L", "T", &n, &k, &one, J.data(), &k, &zero, A.data(), &n, 1, 1);
  return A;
}

// Solves M x = b with M symmetric positive definite (lower triangle used).
// Eigen's own factorisation: the OpenBLAS dpotrf kernel picked on some
// AVX-512 hosts returns wrong factors.
bool cholesky_solve(const Eigen::MatrixXd& M, Eigen::VectorXd& b) {
  const Eigen::LLT<Eigen::MatrixXd, Eigen::Lower> llt(M);
  if (llt.info() != Eigen::Success) return false;
  b = llt.solve(b);
  return b.allFinite();
}

// Derivative tables of the l >= 1 harmonics: rows are nodes, columns are
// coefficient indices 1..(L+1)^2-1.
struct DerivativeBasis {
  Eigen::MatrixXd d_theta;
  Eigen::MatrixXd d_phi_hat;
};

DerivativeBasis derivative_basis(const SphereGrid& grid) {
  const int L = grid.band_limit();
  const Eigen::Index N = static_cast<Eigen::Index>(grid.size());
  const Eigen::Index Q = static_cast<Eigen::Index>(grid.n_coeffs()) - 1;
  DerivativeBasis b{Eigen::MatrixXd(N, Q), Eigen::MatrixXd(N, Q)};
  for (int l = 1; l <= L; ++l) {
    for (int m = -l; m <= l; ++m) {
      const Eigen::Index col = static_cast<Eigen::Index>(SphereGrid::coeff_index(l, m)) - 1;
      for (Eigen::Index n = 0; n < N; ++n) {
        b.d_theta(n, col) = grid.basis_d_theta(l, m, static_cast<std::size_t>(n));
        b.d_phi_hat(n, col) = grid.basis_d_phi_hat(l, m, static_cast<std::size_t>(n));
      }
    }
  }
  return b;
}

// Frame components of the target metric as three node vectors.
struct TargetMetric {
  Eigen::VectorXd tt, tp, pp;
};

struct Evaluation {
  std::array<Eigen::VectorXd, 3> xt, xp;
  Eigen::VectorXd residual;  // weighted least-squares residual, length 3N
  double cost = 0.0;
  double sup = 0.0;
};

class MetricMismatch {
 public:
  MetricMismatch(const InducedMetric& h, const DerivativeBasis& basis)
      : basis_(basis), n_(static_cast<Eigen::Index>(h.size())), q_(basis.d_theta.cols()) {
    target_.tt.resize(n_);
    target_.tp.resize(n_);
    target_.pp.resize(n_);
    sqrt_w_.resize(n_);
    const auto w = h.grid().weights();
    for (Eigen::Index n = 0; n < n_; ++n) {
      const Sym2& s = h[static_cast<std::size_t>(n)];
      target_.tt[n] = s.tt;
      target_.tp[n] = s.tp;
      target_.pp[n] = s.pp;
      sqrt_w_[n] = std::sqrt(w[static_cast<std::size_t>(n)]);
    }
  }

  Eigen::Index unknowns() const { return 3 * q_; }

  Evaluation evaluate(const Eigen::VectorXd& c) const {
    Evaluation e;
    Eigen::VectorXd htt = Eigen::VectorXd::Zero(n_), htp = Eigen::VectorXd::Zero(n_),
                    hpp = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < 3; ++i) {
      const auto ci = c.segment(i * q_, q_);
      e.xt[i] = basis_.d_theta * ci;
      e.xp[i] = basis_.d_phi_hat * ci;
      htt += e.xt[i].cwiseProduct(e.xt[i]);
      htp += e.xt[i].cwiseProduct(e.xp[i]);
      hpp += e.xp[i].cwiseProduct(e.xp[i]);
    }
    htt -= target_.tt;
    htp -= target_.tp;
    hpp -= target_.pp;
    e.sup = std::max({htt.cwiseAbs().maxCoeff(), htp.cwiseAbs().maxCoeff(), hpp.cwiseAbs().maxCoeff()});
    e.residual.resize(3 * n_);
    e.residual.segment(0, n_) = sqrt_w_.cwiseProduct(htt);
    e.residual.segment(n_, n_) = std::sqrt(2.0) * sqrt_w_.cwiseProduct(htp);
    e.residual.segment(2 * n_, n_) = sqrt_w_.cwiseProduct(hpp);
    e.cost = e.residual.squaredNorm();
    return e;
  }

  Eigen::MatrixXd jacobian(const Evaluation& e) const {
    Eigen::MatrixXd J(3 * n_, 3 * q_);
    const double r2 = std::sqrt(2.0);
    for (int i = 0; i < 3; ++i) {
      const Eigen::VectorXd at = 2.0 * sqrt_w_.cwiseProduct(e.xt[i]);
      const Eigen::VectorXd ap = 2.0 * sqrt_w_.cwiseProduct(e.xp[i]);
      J.block(0, i * q_, n_, q_).noalias() = at.asDiagonal() * basis_.d_theta;
      J.block(n_, i * q_, n_, q_).noalias() =
          (0.5 * r2 * at).asDiagonal() * basis_.d_phi_hat + (0.5 * r2 * ap).asDiagonal() * basis_.d_theta;
      J.block(2 * n_, i * q_, n_, q_).noalias() = ap.asDiagonal() * basis_.d_phi_hat;
    }
    return J;
  }

 private:
  const DerivativeBasis& basis_;
  Eigen::Index n_;
  Eigen::Index q_;
  TargetMetric target_;
  Eigen::VectorXd sqrt_w_;
};

Eigen::VectorXd pack(const EmbeddedSurface::Coefficients& coeffs) {
  const Eigen::Index Q = static_cast<Eigen::Index>(coeffs[0].size()) - 1;
  Eigen::VectorXd c(3 * Q);
  for (int i = 0; i < 3; ++i) {
    for (Eigen::Index q = 0; q < Q; ++q) c[i * Q + q] = coeffs[i][static_cast<std::size_t>(q + 1)];
  }
  return c;
}

EmbeddedSurface::Coefficients unpack(const Eigen::VectorXd& c, std::size_t n_coeffs) {
  const Eigen::Index Q = static_cast<Eigen::Index>(n_coeffs) - 1;
  EmbeddedSurface::Coefficients coeffs;
  for (int i = 0; i < 3; ++i) {
    coeffs[i].assign(n_coeffs, 0.0);
    for (Eigen::Index q = 0; q < Q; ++q) coeffs[i][static_cast<std::size_t>(q + 1)] = c[i * Q + q];
  }
  return coeffs;
}

}  // namespace

double embedding_residual(const EmbeddedSurface& X, const InducedMetric& h) {
  require_same_grid(X.grid(), h.grid(), "embedding::embedding_residual");
  double sup = 0.0;
  for (std::size_t n = 0; n < h.size(); ++n) {
    const Sym2& a = X.metric()[n];
    const Sym2& b = h[n];
    sup = std::max({sup, std::abs(a.tt - b.tt), std::abs(a.tp - b.tp), std::abs(a.pp - b.pp)});
  }
  return sup;
}

ScalarField intrinsic_gauss_curvature(const InducedMetric& h) {
  const SphereGrid& grid = h.grid();
  const std::size_t N = grid.size();

  // Six smooth components of the ambient tensor and their derivatives.
  static constexpr int kRow[6] = {0, 0, 0, 1, 1, 2};
  static constexpr int kCol[6] = {0, 1, 2, 1, 2, 2};
  std::array<SpectralSamples, 6> d;
  {
    std::vector<double> comp(N);
    for (int c = 0; c < 6; ++c) {
      for (std::size_t n = 0; n < N; ++n) comp[n] = h.ambient(n)(kRow[c], kCol[c]);
      d[c] = grid.synthesize_derivatives(grid.analyze(comp), true);
    }
  }
  auto assemble = [&](const std::vector<double> SpectralSamples::*field, std::size_t n, double scale) {
    Eigen::Matrix3d M;
    for (int c = 0; c < 6; ++c) {
      const double v = scale * (d[c].*field)[n];
      M(kRow[c], kCol[c]) = v;
      M(kCol[c], kRow[c]) = v;
    }
    return M;
  };

  std::vector<double> K(N);
  for (std::size_t n = 0; n < N; ++n) {
    const double s = grid.sin_theta_at(n);
    const Eigen::Vector3d& y = grid.unit_position(n);
    const double c = y.z();
    const Eigen::Vector3d a = grid.e_theta(n);
    const Eigen::Vector3d b = s * grid.e_phi(n);
    const Eigen::Vector3d a_t = -y;
    const Eigen::Vector3d a_p = c * grid.e_phi(n);
    const Eigen::Vector3d b_t = a_p;
    const Eigen::Vector3d b_p(-y.x(), -y.y(), 0.0);
    const Eigen::Vector3d a_pp(-c * y.x() / s, -c * y.y() / s, 0.0);
    const Eigen::Vector3d a_tp = -b;
    const Eigen::Vector3d b_tt = -b;
    const Eigen::Vector3d b_tp = a_pp;

    const Eigen::Matrix3d H = assemble(&SpectralSamples::value, n, 1.0);
    const Eigen::Matrix3d Ht = assemble(&SpectralSamples::d_theta, n, 1.0);
    const Eigen::Matrix3d Hp = assemble(&SpectralSamples::d_phi_hat, n, s);
    const Eigen::Matrix3d Htt = assemble(&SpectralSamples::d_theta_theta, n, 1.0);
    const Eigen::Matrix3d Htp = assemble(&SpectralSamples::d_theta_phi_hat, n, s);
    const Eigen::Matrix3d Hpp = assemble(&SpectralSamples::d_phi_phi_hat, n, s * s);
    auto q = [](const Eigen::Vector3d& u, const Eigen::Matrix3d& M, const Eigen::Vector3d& v) {
      return u.dot(M * v);
    };

    const double E = q(a, H, a), F = q(a, H, b), G = q(b, H, b);
    const double Eu = 2.0 * q(a_t, H, a) + q(a, Ht, a);
    const double Ev = 2.0 * q(a_p, H, a) + q(a, Hp, a);
    const double Evv = 2.0 * q(a_pp, H, a) + 2.0 * q(a_p, H, a_p) + 4.0 * q(a_p, Hp, a) + q(a, Hpp, a);
    const double Fu = q(a_t, H, b) + q(a, H, b_t) + q(a, Ht, b);
    const double Fv = q(a_p, H, b) + q(a, H, b_p) + q(a, Hp, b);
    const double Fuv = q(a_tp, H, b) + q(a_t, H, b_p) + q(a_t, Hp, b) + q(a_p, H, b_t) + q(a, H, b_tp) +
                       q(a, Hp, b_t) + q(a_p, Ht, b) + q(a, Ht, b_p) + q(a, Htp, b);
    const double Gu = 2.0 * q(b_t, H, b) + q(b, Ht, b);
    const double Gv = 2.0 * q(b_p, H, b) + q(b, Hp, b);
    const double Guu = 2.0 * q(b_tt, H, b) + 2.0 * q(b_t, H, b_t) + 4.0 * q(b_t, Ht, b) + q(b, Htt, b);

    Eigen::Matrix3d M1;
    M1 << -0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev,
          Fv - 0.5 * Gu, E, F,
          0.5 * Gv, F, G;
    Eigen::Matrix3d M2;
    M2 << 0.0, 0.5 * Ev, 0.5 * Gu,
          0.5 * Ev, E, F,
          0.5 * Gu, F, G;
    const double det = E * G - F * F;
    K[n] = (M1.determinant() - M2.determinant()) / (det * det);
  }
  return ScalarField(h.grid_ptr(), std::move(K));
}

EmbeddedSurface normalize_gauge(const EmbeddedSurface& X) {
  const SphereGrid& grid = X.grid();
  const auto w = grid.weights();
  const auto mu = X.metric().area_density();
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  double area = 0.0;
  for (std::size_t n = 0; n < grid.size(); ++n) {
    centroid += w[n] * mu[n] * X.position(n);
    area += w[n] * mu[n];
  }
  const EmbeddedSurface centred = X.translated(-centroid / area);

  Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
  for (std::size_t n = 0; n < grid.size(); ++n) {
    M += w[n] * mu[n] * centred.position(n) * grid.unit_position(n).transpose();
  }
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d D = Eigen::Matrix3d::Identity();
  if ((svd.matrixV() * svd.matrixU().transpose()).determinant() < 0.0) D(2, 2) = -1.0;
  const Eigen::Matrix3d Q = svd.matrixV() * D * svd.matrixU().transpose();
  return centred.rotated(Q);
}

WeylSolution solve_weyl(const InducedMetric& h, const std::optional<EmbeddedSurface>& initial_guess,
                        const WeylOptions& options) {
  const SphereGrid& grid = h.grid();
  if (initial_guess) require_same_grid(initial_guess->grid(), grid, kWhere);
  if (!(options.tol > 0.0) || options.max_iterations < 1) {
    throw InvalidArgument(kWhere, "tol must be positive and max_iterations >= 1");
  }

  const ScalarField K = intrinsic_gauss_curvature(h);
  if (!(K.min() > 0.0)) {
    throw NotConvex(kWhere, "Gauss curvature of the metric reaches " + std::to_string(K.min()));
  }

  const double area = h.area();
  const double R0 = std::sqrt(area / (4.0 * std::numbers::pi));
  const double target = options.tol * std::max(1.0, R0 * R0);

  const DerivativeBasis basis = derivative_basis(grid);
  const MetricMismatch mismatch(h, basis);
  Eigen::VectorXd c = pack(initial_guess ? initial_guess->coefficients()
                                         : round_surface(h.grid_ptr(), R0).coefficients());
  Evaluation cur = mismatch.evaluate(c);

  double lambda = 1e-3;
  int iterations = 0;
  bool converged = cur.sup <= target;
  while (!converged && iterations < options.max_iterations) {
    const Eigen::MatrixXd J = mismatch.jacobian(cur);
    const Eigen::MatrixXd A = normal_matrix(J);
    const Eigen::VectorXd g = J.transpose() * cur.residual;
    const Eigen::VectorXd diag = A.diagonal().array() + 1e-12 * A.diagonal().maxCoeff();

    bool stepped = false;
    while (!stepped && lambda < 1e10) {
      Eigen::MatrixXd M = A;
      M.diagonal() += lambda * diag;
      Eigen::VectorXd delta = -g;
      if (!cholesky_solve(M, delta)) {
        lambda *= 10.0;
        continue;
      }
      for (double alpha : {1.0, 0.5, 0.25}) {
        Evaluation trial = mismatch.evaluate(c + alpha * delta);
        if (trial.cost < cur.cost) {
          c += alpha * delta;
          cur = std::move(trial);
          stepped = true;
          break;
        }
      }
      if (!stepped) lambda *= 10.0;
    }
    if (!stepped) break;
    lambda = std::max(lambda / 10.0, 1e-9);
    ++iterations;
    spdlog::debug("{}: iteration {} residual {:.3e}", kWhere, iterations, cur.sup);
    converged = cur.sup <= target;
  }
  if (!converged) {
    throw NoConvergence(kWhere,
                        "metric residual " + std::to_string(cur.sup) + " after " +
                            std::to_string(iterations) + " iterations",
                        cur.sup);
  }

  EmbeddedSurface surface = normalize_gauge(EmbeddedSurface(h.grid_ptr(), unpack(c, grid.n_coeffs())));
  const double residual = embedding_residual(surface, h);
  return WeylSolution{std::move(surface), residual, iterations, true};
}

}  // namespace qle
