#include "hkgeom/complexify.hpp"

#include "hkgeom/error.hpp"

namespace hk {

namespace {

const Complex kI(0.0, 1.0);

Matrix algebra_projection(const LieAlgebraContext& ctx, const Matrix& x) {
  return ctx.from_coordinates(ctx.coordinates(x));
}

Matrix invariant_coordinates(const LieAlgebraContext& ctx, const Matrix& c) {
  if (!ctx.h_marker()) fail(ErrorKind::NoSplitConfigured, "context has no H^C membership predicate");
  return c * *ctx.h_marker() * c.inverse();
}

}  // namespace

TangentPoint trivialize(const GroupElement& a, const Matrix& w) {
  const auto& ctx = *a.context;
  const Matrix v = a.matrix.inverse() * w;
  const Matrix back = algebra_projection(ctx, v);
  if ((back - v).norm() > ctx.tolerance() * std::max(1.0, v.norm())) {
    fail(ErrorKind::NotTangent, "a^{-1} w is not in the algebra");
  }
  return {a, {back, a.context, false}};
}

GroupElement phi_map(const TangentPoint& p) {
  return {p.base.matrix * expm(kI * p.vector.matrix), p.base.context, true};
}

TangentPoint phi_inverse(const GroupElement& z) {
  const auto& ctx = *z.context;
  const PolarFactors f = polar_decompose(z.matrix);
  const Matrix v = -kI * logm(f.positive);
  const Matrix back = algebra_projection(ctx, v);
  if ((back - v).norm() > 1e-8 * std::max(1.0, v.norm())) {
    fail(ErrorKind::LogBranchFailure, "polar factor does not come from the algebra");
  }
  return {{f.unitary, z.context, false}, {back, z.context, false}};
}

CosetPoint psi_map(const TangentPoint& p) {
  const auto& ctx = *p.vector.context;
  const Matrix h_part = ctx.project_h(p.vector.matrix);
  if (h_part.norm() > ctx.tolerance() * std::max(1.0, p.vector.matrix.norm())) {
    fail(ErrorKind::VectorNotInM, "tangent vector has a component along the subalgebra");
  }
  return {phi_map(p)};
}

bool same_coset(const CosetPoint& p, const CosetPoint& q, double tol) {
  const auto& ctx = *p.representative.context;
  const Matrix rel = p.representative.matrix.inverse() * q.representative.matrix;
  return ctx.in_complex_subgroup(rel, tol);
}

TangentPoint left_act(const GroupElement& g, const TangentPoint& p) {
  return {{g.matrix * p.base.matrix, p.base.context, p.base.complexified}, p.vector};
}

CosetPoint left_act(const GroupElement& g, const CosetPoint& p) {
  return {{g.matrix * p.representative.matrix, p.representative.context, true}};
}

TangentPoint h_act(const GroupElement& h, const TangentPoint& p) {
  return {{p.base.matrix * h.matrix.inverse(), p.base.context, false}, adjoint(h, p.vector)};
}

GroupElement leaf_map(const GroupElement& a, const AlgebraElement& x, double t, double s) {
  return {a.matrix * expm(Complex(t, s) * x.matrix), a.context, s != 0.0 || a.complexified};
}

CosetPoint leaf_map_coset(const GroupElement& a, const AlgebraElement& y, double t, double s) {
  return {{a.matrix * expm(Complex(t, s) * y.matrix), a.context, true}};
}

double leaf_cr_residual(const GroupElement& a, const AlgebraElement& x, double t, double s, double step) {
  auto c = [&](double tt, double ss) { return leaf_map(a, x, tt, ss).matrix; };
  const Matrix ds = (c(t, s + step) - c(t, s - step)) / (2.0 * step);
  const Matrix dt = (c(t + step, s) - c(t - step, s)) / (2.0 * step);
  return (ds - kI * dt).norm();
}

double coset_leaf_cr_residual(const GroupElement& a, const AlgebraElement& y, double t, double s, double step) {
  const auto& ctx = *a.context;
  auto c = [&](double tt, double ss) {
    return invariant_coordinates(ctx, leaf_map_coset(a, y, tt, ss).representative.matrix);
  };
  const Matrix ds = (c(t, s + step) - c(t, s - step)) / (2.0 * step);
  const Matrix dt = (c(t + step, s) - c(t - step, s)) / (2.0 * step);
  return (ds - kI * dt).norm();
}

}  // namespace hk
