#pragma once

#include "hkgeom/lie_core.hpp"

namespace hk {

/// Left-trivialized tangent vector (a, v): the vector a·v at a, with v in the algebra.
struct TangentPoint {
  GroupElement base;
  AlgebraElement vector;
};

/// Point of G^C / H^C given by a representative in G^C. Equality is decided by
/// the context's H^C membership predicate.
struct CosetPoint {
  GroupElement representative;
};

/// (a, w) ↦ (a, a⁻¹w). Throws NotTangent when a⁻¹w leaves the algebra.
TangentPoint trivialize(const GroupElement& a, const Matrix& w);

/// (a, v) ↦ a exp(iv).
GroupElement phi_map(const TangentPoint& p);
/// Inverse of phi_map through the polar decomposition z = a·exp(iv).
TangentPoint phi_inverse(const GroupElement& z);

/// (a, v) ↦ a exp(iv) H^C for v in the complement m. Throws VectorNotInM otherwise.
CosetPoint psi_map(const TangentPoint& p);

bool same_coset(const CosetPoint& p, const CosetPoint& q, double tol = 1e-9);

/// Left actions of G: g·(a, v) = (g a, v) and g·[z] = [g z].
TangentPoint left_act(const GroupElement& g, const TangentPoint& p);
CosetPoint left_act(const GroupElement& g, const CosetPoint& p);
/// Right action of h ∈ H under which psi_map is constant: (a h⁻¹, Ad_h v).
TangentPoint h_act(const GroupElement& h, const TangentPoint& p);

/// a·exp(τX) with τ = t + i s, so s = 0 is the geodesic a·exp(tX).
GroupElement leaf_map(const GroupElement& a, const AlgebraElement& x, double t, double s);
CosetPoint leaf_map_coset(const GroupElement& a, const AlgebraElement& y, double t, double s);

/// ‖∂_s c - i ∂_t c‖ at (t, s) by central differences with the given step.
double leaf_cr_residual(const GroupElement& a, const AlgebraElement& x, double t, double s, double step);
/// Same residual for the coset leaf, read through the H^C-invariant coordinates c·m·c⁻¹ (m = marker).
double coset_leaf_cr_residual(const GroupElement& a, const AlgebraElement& y, double t, double s, double step);

}  // namespace hk
