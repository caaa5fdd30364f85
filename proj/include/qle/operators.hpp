#pragma once

// Intrinsic calculus on (S^2, h) for an arbitrary induced metric h, assembled
// pointwise from spectral round-frame derivatives. Divergences go through the
// ambient Cartesian components of the tangent field, which are smooth across
// the poles. Those components carry one degree more than the field, so the
// second-order operators are exact for fields of degree <= L - 1 only.

#include <vector>

#include "qle/fields.hpp"

namespace qle {

/// int_S f dv_h.
double integrate(const ScalarField& f, const InducedMetric& h);

/// Round-frame components (df(e_theta), df(e_phi)) of the differential.
std::vector<FrameVector> differential(const ScalarField& f);

/// grad_h f, i.e. h^{-1} df, as a tangent field.
TangentField gradient(const ScalarField& f, const InducedMetric& h);

/// Pointwise h(u, v).
ScalarField inner(const TangentField& u, const TangentField& v, const InducedMetric& h);

/// Pointwise |u|_h^2.
ScalarField norm_squared(const TangentField& u, const InducedMetric& h);

/// div_h u.
ScalarField divergence(const TangentField& u, const InducedMetric& h);

/// Laplace-Beltrami operator of h.
ScalarField laplacian(const ScalarField& f, const InducedMetric& h);

/// Tangent field given in round-frame components -> ambient R^3 vectors
/// (using the unit sphere's frame, not an embedding).
std::vector<Eigen::Vector3d> to_ambient(const TangentField& u);

}  // namespace qle
