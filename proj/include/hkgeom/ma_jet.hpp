#pragma once

#include <random>
#include <string>
#include <vector>

#include "hkgeom/curvature.hpp"
#include "hkgeom/jet.hpp"

namespace hk {

/// Coefficient of Σ y_i² in the potential on the zero section's fiber.
constexpr double kFiberQuadraticCoefficient = 1.0;
/// Default exact degree for potentials and residuals.
constexpr int kDefaultJetDegree = 6;

/// Variables are ordered x_0..x_{n-1}, y_0..y_{n-1}.
inline int x_var(int i) { return i; }
inline int y_var(int n, int i) { return n + i; }

/// Potential of the adapted complex structure through degree 4:
/// Σ y_i² - 1/3 Σ R_ipjq x_p x_q y_i y_j, stored exact through max_degree.
JetPolynomial potential_expansion(const CurvatureTensor& r, int max_degree = kDefaultJetDegree);

/// ∂/∂z_α = ½(∂_x - i∂_y) and ∂/∂z̄_α = ½(∂_x + i∂_y) on a real jet in 2n variables.
ComplexJet wirtinger_holomorphic(const JetPolynomial& rho, int alpha);
ComplexJet wirtinger_antiholomorphic(const JetPolynomial& rho, int alpha);
ComplexJet wirtinger_holomorphic(const ComplexJet& f, int n, int alpha);
ComplexJet wirtinger_antiholomorphic(const ComplexJet& f, int n, int alpha);

/// Σ_α ρ^α ρ_α - 2ρ where ρ^α = Σ_β ρ^{αβ̄} ρ_β̄ and Σ_β ρ^{αβ̄} ρ_{γβ̄} = δ_αγ.
/// The result is real; its imaginary part is discarded after a consistency check.
JetPolynomial ma_residual(const JetPolynomial& rho);

/// Same expression evaluated pointwise from the polynomial's exact derivatives.
double ma_residual_at(const JetPolynomial& rho, std::span<const double> point);

/// Sup of |ma_residual_at| over sample points of the polydisk of radius eps.
double ma_residual_sup(const JetPolynomial& rho, double eps, int samples, std::uint64_t seed);

struct ScalingFit {
  std::vector<double> eps;
  std::vector<double> sup;
  double exponent = 0.0;
};
/// Least-squares slope of log(sup) against log(eps).
ScalingFit ma_scaling_fit(const JetPolynomial& rho, const std::vector<double>& eps, int samples,
                          std::uint64_t seed);

/// Inverse of δ_ij + a_ij with a_ij homogeneous of degree 2, as a jet matrix
/// exact through the input's max_degree.
RealJetMatrix inverse_jet(const RealJetMatrix& m);

/// Quartic fiber coefficients 𝒜 (nonzero only on ordered quadruples) and the
/// derived tensors B and C. Dense arrays use index ((a n + b) n + c) n + d.
struct QuarticCoefficients {
  int n = 0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;

  // Matching diagnostics from the series solve, indexed like `a`:
  // curvature part of the quartic fiber residual, and the arrangement sum of
  // R_{αδβγ} + R_{αγβδ} over the quadruple. They satisfy residual = sum / 3.
  std::vector<double> curvature_residual;
  std::vector<double> arrangement_sum;

  double A(int i, int j, int k, int l) const { return a[idx(i, j, k, l)]; }
  double B(int i, int j, int k, int l) const { return b[idx(i, j, k, l)]; }
  double C(int i, int j, int k, int l) const { return c[idx(i, j, k, l)]; }
  std::size_t idx(int i, int j, int k, int l) const {
    return static_cast<std::size_t>(((i * n + j) * n + k) * n + l);
  }
  double max_abs_a() const;
};

/// Builds B and C from 𝒜. Throws UnorderedIndices if 𝒜 is set off the ordered quadruples.
QuarticCoefficients make_quartic(int n, const std::vector<double>& a);
QuarticCoefficients random_quartic(int n, std::mt19937_64& rng);

/// Solves for the quartic fiber coefficients by imposing the residual's
/// degree-4 pure-fiber part to vanish on the ansatz
/// potential_expansion(R) + Σ 𝒜_ijkl y_i y_j y_k y_l.
QuarticCoefficients series_solve_quartic(const CurvatureTensor& r);

/// The full degree-4 potential with the solved quartic fiber part.
JetPolynomial series_solution(const CurvatureTensor& r, const QuarticCoefficients& q,
                              int max_degree = kDefaultJetDegree);

/// Distinct rearrangements of the multiset {i, j, k, l}.
std::vector<std::array<int, 4>> distinct_arrangements(int i, int j, int k, int l);

/// Σ over distinct rearrangements (α,β,γ,δ) of {i,j,k,l} of B_αβγδ - ½ C_δγαβ, plus 2𝒜_ijkl.
double arrangement_identity(const QuarticCoefficients& q, int i, int j, int k, int l);

/// Sparse rows: one exponent vector and coefficient per term.
std::string jet_to_text(const JetPolynomial& j);
std::string jet_to_json(const JetPolynomial& j);
JetPolynomial jet_from_json(const std::string& text);

}  // namespace hk
