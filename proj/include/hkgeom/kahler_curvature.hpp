#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "hkgeom/curvature.hpp"
#include "hkgeom/jet.hpp"

namespace hk {

/// Curvature components K_{i j̄ k l̄} of the Kähler metric 2i∂∂̄ρ at the zero section.
struct KahlerCurvatureAtZero {
  int n = 0;
  std::vector<std::complex<double>> k;
  std::optional<CurvatureTensor> source;

  std::complex<double> operator()(int i, int jb, int kk, int lb) const {
    return k[static_cast<std::size_t>(((i * n + jb) * n + kk) * n + lb)];
  }
  std::complex<double>& at(int i, int jb, int kk, int lb) {
    return k[static_cast<std::size_t>(((i * n + jb) * n + kk) * n + lb)];
  }

  double max_imag() const;
  /// Largest |K_{ij̄kl̄} - conj K_{jīlk̄}|.
  double hermitian_defect() const;
  double max_abs_difference(const KahlerCurvatureAtZero& other) const;
};

/// K_{ij̄kl̄} = (R_ijkl + R_ilkj) / 6.
KahlerCurvatureAtZero k_components_at_zero(const CurvatureTensor& r);

/// Evaluates ρ_{ij̄kl̄} - Σ ρ^{νμ̄} ρ_{ikμ̄} ρ_{j̄l̄ν} at the origin from exact jet derivatives.
KahlerCurvatureAtZero k_oracle_from_jet(const JetPolynomial& rho);

enum class PlaneType { XY, XX, YY, Holomorphic };

std::string to_string(PlaneType p);
PlaneType plane_type_from_string(const std::string& s);

/// Sectional curvature of a coordinate plane at the origin. Coordinate frames
/// are orthonormal there, so no norm denominators appear. For Holomorphic the
/// plane is x_i ∧ y_i and j is ignored.
double sectional_plane(const KahlerCurvatureAtZero& k, PlaneType plane, int i, int j = -1);
double sectional_plane(const CurvatureTensor& r, PlaneType plane, int i, int j = -1);

struct NegativePlaneWitness {
  bool flag = false;
  int i = -1;
  int j = -1;
  double value = 0.0;  // sectional curvature of x_i ∧ y_j
};

/// Set when R is not flat and some R_ijij > 0; the witness is the plane x_i ∧ y_j
/// for the first maximal R_ijij, with curvature -R_ijij / 3.
NegativePlaneWitness find_negative_plane(const CurvatureTensor& r);

/// Rows i,j,plane,closed_form,oracle,abs_error for every coordinate plane.
std::string kahler_table_csv(const CurvatureTensor& r);

}  // namespace hk
