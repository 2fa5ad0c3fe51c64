#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "hkgeom/curvature.hpp"
#include "hkgeom/error.hpp"
#include "hkgeom/kahler_curvature.hpp"
#include "hkgeom/ma_jet.hpp"

using namespace hk;

namespace {

using C = std::complex<double>;

// ∂/∂z_a (holo) or ∂/∂z̄_a built from real partials in x_a and y_a.
ComplexJet wirtinger(const ComplexJet& f, int n, int a, bool holo) {
  const C half_i(0.0, holo ? -0.5 : 0.5);
  return 0.5 * f.derivative(a) + half_i * f.derivative(n + a);
}

C fourth_derivative(const JetPolynomial& rho, int n, int i, int j, int k, int l) {
  ComplexJet f = complexify(rho);
  f = wirtinger(f, n, l, false);
  f = wirtinger(f, n, k, true);
  f = wirtinger(f, n, j, false);
  f = wirtinger(f, n, i, true);
  return f.constant_term();
}

}  // namespace

TEST_CASE("K components from the curvature tensor") {
  const KahlerCurvatureAtZero zero = k_components_at_zero(CurvatureTensor(3));
  for (const C& v : zero.k) CHECK(v == C(0.0));

  const KahlerCurvatureAtZero s2 = k_components_at_zero(constant_curvature(2, 1.0));
  CHECK(s2(0, 1, 0, 1).real() == doctest::Approx(1.0 / 3.0));
  CHECK(s2(0, 1, 1, 0).real() == doctest::Approx(-1.0 / 6.0));
  CHECK(s2.max_imag() == 0.0);
}

TEST_CASE("jet-derivative oracle agrees with the closed form and with direct Wirtinger derivatives") {
  CHECK(k_oracle_from_jet(potential_expansion(CurvatureTensor(2))).max_abs_difference(k_components_at_zero(CurvatureTensor(2))) == 0.0);
  std::mt19937_64 rng(21);
  for (int s = 0; s < 10; ++s) {
    const int n = 2 + s % 2;
    const CurvatureTensor r = random_curvature_tensor(n, rng);
    const JetPolynomial rho = potential_expansion(r);
    const KahlerCurvatureAtZero oracle = k_oracle_from_jet(rho);
    const KahlerCurvatureAtZero closed = k_components_at_zero(r);
    CHECK(oracle.max_abs_difference(closed) <= 1e-10);
    CHECK(oracle.hermitian_defect() <= 1e-12);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            CHECK(std::abs(oracle(i, j, k, l) - fourth_derivative(rho, n, i, j, k, l)) <= 1e-12);
  }
}

TEST_CASE("plane curvatures of the round sphere") {
  const CurvatureTensor r = constant_curvature(2, 1.0);
  CHECK(sectional_plane(r, PlaneType::XY, 0, 1) == doctest::Approx(-1.0 / 3.0));
  CHECK(sectional_plane(r, PlaneType::XX, 0, 1) == doctest::Approx(1.0));
  CHECK(sectional_plane(r, PlaneType::YY, 0, 1) == doctest::Approx(1.0));
  CHECK(sectional_plane(r, PlaneType::Holomorphic, 0) == 0.0);
  CHECK(sectional_plane(r, PlaneType::Holomorphic, 1) == 0.0);
}

TEST_CASE("plane curvature properties for random tensors") {
  std::mt19937_64 rng(22);
  for (int s = 0; s < 10; ++s) {
    const int n = 2 + s % 2;
    const CurvatureTensor r = random_curvature_tensor(n, rng);
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(sectional_plane(r, PlaneType::Holomorphic, i)) <= 1e-14);
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        CHECK(sectional_plane(r, PlaneType::XX, i, j) == doctest::Approx(sectional(r, i, j)));
        CHECK(sectional_plane(r, PlaneType::YY, i, j) == doctest::Approx(sectional(r, i, j)));
        CHECK(sectional_plane(r, PlaneType::XY, i, j) == doctest::Approx(-sectional(r, i, j) / 3.0));
      }
    }
  }
  CHECK_THROWS_AS(sectional_plane(constant_curvature(2, 1.0), PlaneType::XY, 0, 2), GeometryError);
  CHECK(plane_type_from_string(to_string(PlaneType::XX)) == PlaneType::XX);
}

TEST_CASE("negative plane witness") {
  CHECK_FALSE(find_negative_plane(CurvatureTensor(3)).flag);

  const NegativePlaneWitness w = find_negative_plane(constant_curvature(2, 1.0));
  CHECK(w.flag);
  CHECK(w.value == doctest::Approx(-1.0 / 3.0));
  CHECK(sectional_plane(constant_curvature(2, 1.0), PlaneType::XY, w.i, w.j) == doctest::Approx(w.value));

  CHECK_FALSE(find_negative_plane(constant_curvature(3, -1.0)).flag);

  RealMatrix h(3, 3);
  h << 3, 1, 0, 1, 2, 0.5, 0, 0.5, 1;
  const CurvatureTensor psd = 0.5 * kulkarni_nomizu(h, h);
  const NegativePlaneWitness v = find_negative_plane(psd);
  CHECK(v.flag);
  double best = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) best = std::max(best, sectional(psd, i, j));
  CHECK(v.value == doctest::Approx(-best / 3.0));
  CHECK(v.value == sectional_plane(psd, PlaneType::XY, v.i, v.j));
}

TEST_CASE("curvature table CSV") {
  const std::string csv = kahler_table_csv(constant_curvature(2, 1.0));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "i,j,plane,closed_form,oracle,abs_error");
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows > 0);
}
