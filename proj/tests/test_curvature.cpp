#include <doctest.h>

#include <functional>

#include <cmath>
#include <random>

#include "hkgeom/curvature.hpp"
#include "hkgeom/error.hpp"

using namespace hk;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e.kind();
  }
  FAIL("expected a GeometryError");
  return ErrorKind::MalformedInput;
}

// Round S² of curvature 1 written out component by component.
CurvatureTensor s2_by_hand() {
  CurvatureTensor r(2);
  r(0, 1, 0, 1) = 1.0;
  r(1, 0, 1, 0) = 1.0;
  r(0, 1, 1, 0) = -1.0;
  r(1, 0, 0, 1) = -1.0;
  return r;
}

}  // namespace

TEST_CASE("space forms and sectional curvature") {
  CHECK(constant_curvature(2, 1.0).max_abs_difference(s2_by_hand()) == 0.0);
  CHECK(sectional(CurvatureTensor(3), 0, 1) == 0.0);
  CHECK(sectional(s2_by_hand(), 0, 1) == 1.0);
  const CurvatureTensor s3 = constant_curvature(3, 0.7);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(sectional(s3, i, j) == doctest::Approx(0.7));
  for (int i = 0; i < 3; ++i) CHECK(s3(i, i, i, i) == 0.0);
  CHECK(kind_of([&] { sectional(s3, 1, 1); }) == ErrorKind::EqualIndices);
  CHECK(kind_of([&] { sectional(s3, 0, 3); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("random tensors are admissible and sectional curvature is symmetric") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 3;
    const CurvatureTensor r = random_curvature_tensor(n, rng);
    CHECK(r.symmetry_defect() <= 1e-12);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) CHECK(sectional(r, i, j) == doctest::Approx(sectional(r, j, i)).epsilon(1e-14));
  }
}

TEST_CASE("symmetry violations are rejected") {
  CurvatureTensor r(2);
  r(0, 1, 0, 1) = 1.0;
  CHECK(kind_of([&] { r.validate(); }) == ErrorKind::SymmetryViolation);
  CHECK(kind_of([&] { normal_metric_jet(r); }) == ErrorKind::SymmetryViolation);
}

TEST_CASE("normal-coordinate metric jet") {
  const RealJetMatrix flat = normal_metric_jet(CurvatureTensor(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(flat(i, j).terms().size() == (i == j ? 1u : 0u));
      CHECK(flat(i, j).constant_term() == (i == j ? 1.0 : 0.0));
    }

  const RealJetMatrix g = normal_metric_jet(constant_curvature(2, 1.0));
  CHECK(g(0, 0).coefficient(monomial({1, 1})) == doctest::Approx(-1.0 / 3.0));
  CHECK(g(0, 0).terms().size() == 2u);
  CHECK(g(1, 1).coefficient(monomial({0, 0})) == doctest::Approx(-1.0 / 3.0));
  CHECK(g(0, 1).coefficient(monomial({0, 1})) == doctest::Approx(1.0 / 3.0));
  CHECK(g(0, 1).terms().size() == 1u);

  std::mt19937_64 rng(2);
  const CurvatureTensor r = random_curvature_tensor(3, rng);
  const RealJetMatrix a = normal_metric_jet(r), b = normal_metric_jet(2.5 * r);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (const auto& [e, c] : a(i, j).terms())
        if (total_degree(e) == 2) CHECK(b(i, j).coefficient(e) == doctest::Approx(2.5 * c));
}

TEST_CASE("finite-difference curvature of charts") {
  const MetricChart euclid{3, [](std::span<const double>) { return RealMatrix(RealMatrix::Identity(3, 3)); }, true};
  CHECK(curvature_from_chart(euclid).max_abs() <= 1e-9);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 6; ++trial) {
    const CurvatureTensor r = random_curvature_tensor(2 + trial % 2, rng);
    const CurvatureTensor back = curvature_from_chart(chart_from_jet(normal_metric_jet(r)), 1e-3);
    CHECK(back.max_abs_difference(r) <= 1e-6);
    CHECK(back.symmetry_defect() <= 1e-6);
  }

  const CurvatureTensor sphere = curvature_from_chart(space_form_normal_chart(2, 1.0), 1e-3);
  CHECK(sphere(0, 1, 0, 1) == doctest::Approx(1.0).epsilon(1e-6));
  const CurvatureTensor hyper = curvature_from_chart(space_form_normal_chart(3, -0.5), 1e-3);
  CHECK(hyper.max_abs_difference(constant_curvature(3, -0.5)) <= 1e-6);
}

TEST_CASE("charts that are not positive-definite are rejected") {
  const MetricChart bad{2, [](std::span<const double> x) {
                          RealMatrix g = RealMatrix::Identity(2, 2);
                          g(0, 0) = x[0] > 0.0015 ? -1.0 : 1.0;
                          return g;
                        }, true};
  CHECK(kind_of([&] { curvature_from_chart(bad, 1e-3); }) == ErrorKind::SingularMetric);
}

TEST_CASE("Kulkarni-Nomizu products and Riemannian products") {
  RealMatrix h(3, 3);
  h << 2, 0.5, 0, 0.5, 1, 0.2, 0, 0.2, 0.5;
  const CurvatureTensor r = 0.5 * kulkarni_nomizu(h, h);
  CHECK(r.symmetry_defect() <= 1e-14);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(sectional(r, i, j) == doctest::Approx(h(i, i) * h(j, j) - h(i, j) * h(i, j)));
  const CurvatureTensor p = named_curvature("s2xr");
  CHECK(p.dimension() == 3);
  CHECK(sectional(p, 0, 1) == 1.0);
  CHECK(sectional(p, 0, 2) == 0.0);
}

TEST_CASE("curvature JSON roundtrip") {
  std::mt19937_64 rng(6);
  const CurvatureTensor r = random_curvature_tensor(3, rng);
  const CurvatureTensor back = curvature_from_json(curvature_to_json(r));
  CHECK(back.max_abs_difference(r) <= 1e-15);
  CHECK(kind_of([&] { curvature_from_json("{not json"); }) == ErrorKind::MalformedInput);
}
