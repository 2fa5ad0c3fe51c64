#pragma once

#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hkgeom/jet.hpp"
#include "hkgeom/matrix_functions.hpp"

namespace hk {

/**
 * Riemann tensor at a point in an orthonormal frame, stored in the slot order
 *
 *     R(X, Y, Z, W) = g(R(X, Y) W, Z),   R(X, Y) = [∇_X, ∇_Y] - ∇_[X,Y],
 *
 * so R(i, j, i, j) is the sectional curvature of the (i, j) coordinate plane
 * (positive on round spheres). The symmetries are the usual algebraic ones:
 * antisymmetry in (i, j) and in (k, l), pair exchange, and the cyclic
 * identity in the first three slots.
 */
class CurvatureTensor {
 public:
  explicit CurvatureTensor(int dimension);

  int dimension() const { return n_; }

  double& operator()(int i, int j, int k, int l) { return data_[index(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return data_[index(i, j, k, l)]; }

  /// Largest violation of any algebraic curvature identity.
  double symmetry_defect() const;
  /// Throws SymmetryViolation when symmetry_defect() exceeds tol (relative to the largest entry).
  void validate(double tol = 1e-10) const;

  bool is_zero(double tol = 0.0) const;
  double max_abs() const;
  double max_abs_difference(const CurvatureTensor& other) const;

  CurvatureTensor& operator+=(const CurvatureTensor& other);
  CurvatureTensor& operator*=(double s);
  friend CurvatureTensor operator+(CurvatureTensor a, const CurvatureTensor& b) { return a += b; }
  friend CurvatureTensor operator*(double s, CurvatureTensor a) { return a *= s; }

 private:
  std::size_t index(int i, int j, int k, int l) const {
    return static_cast<std::size_t>(((i * n_ + j) * n_ + k) * n_ + l);
  }

  int n_;
  std::vector<double> data_;
};

/// A coordinate chart around the origin given by its metric coefficients.
struct MetricChart {
  int dimension = 0;
  std::function<RealMatrix(std::span<const double>)> metric;
  bool normal_at_origin = true;
};

/// Space form of curvature kappa: R_ijkl = kappa (d_ik d_jl - d_il d_jk).
CurvatureTensor constant_curvature(int n, double kappa);
/// Kulkarni-Nomizu product (h ⊙ k) in the stored slot order.
CurvatureTensor kulkarni_nomizu(const RealMatrix& h, const RealMatrix& k);
/// Curvature of a Riemannian product M1 x M2 (block-diagonal).
CurvatureTensor product_curvature(const CurvatureTensor& a, const CurvatureTensor& b);
/// Random algebraic curvature tensor: symmetrized noise projected onto the
/// kernel of the Bianchi map. Retries until every identity holds to 1e-12.
CurvatureTensor random_curvature_tensor(int n, std::mt19937_64& rng, double scale = 1.0);

/// Sectional curvature of the coordinate plane (i, j) in the orthonormal frame.
double sectional(const CurvatureTensor& r, int i, int j);

/// Degree-2 jet of g_ij in normal coordinates: δ_ij - 1/3 Σ R_ipjq x_p x_q.
RealJetMatrix normal_metric_jet(const CurvatureTensor& r);

MetricChart chart_from_jet(const RealJetMatrix& jet);
/// Round (kappa > 0) or hyperbolic (kappa < 0) space form in geodesic normal coordinates.
MetricChart space_form_normal_chart(int n, double kappa);

/// Christoffel symbols and Riemann tensor at the origin from fourth-order
/// central differences of the chart metric.
CurvatureTensor curvature_from_chart(const MetricChart& chart, double step = 1e-3);

/// JSON with an index manifest of the independent components (i<j, k<l, (i,j) <= (k,l)).
std::string curvature_to_json(const CurvatureTensor& r);
CurvatureTensor curvature_from_json(const std::string& text);

/// Named test tensors: flat<n>, s2, s3, s2xr, h2, nonneg<n>.
CurvatureTensor named_curvature(const std::string& name);

}  // namespace hk
