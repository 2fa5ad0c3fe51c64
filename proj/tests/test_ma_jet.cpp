#include <doctest.h>

#include <functional>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "hkgeom/curvature.hpp"
#include "hkgeom/error.hpp"
#include "hkgeom/ma_jet.hpp"

using namespace hk;

namespace {

using C = std::complex<double>;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e.kind();
  }
  FAIL("expected a GeometryError");
  return ErrorKind::MalformedInput;
}

// Residual Σ ρ^α ρ_α - 2ρ from central differences of the evaluated polynomial.
double residual_by_differences(const JetPolynomial& rho, int n, std::vector<double> p) {
  const double h = 1e-4;
  auto f = [&](const std::vector<double>& q) { return rho.evaluate(q); };
  auto d1 = [&](int a) {
    auto u = p, v = p;
    u[a] += h;
    v[a] -= h;
    return (f(u) - f(v)) / (2 * h);
  };
  auto d2 = [&](int a, int b) {
    double s = 0.0;
    for (int sa : {1, -1})
      for (int sb : {1, -1}) {
        auto q = p;
        q[a] += sa * h;
        q[b] += sb * h;
        s += sa * sb * f(q);
      }
    return s / (4 * h * h);
  };
  Eigen::VectorXcd g(n);
  Eigen::MatrixXcd hess(n, n);
  for (int a = 0; a < n; ++a) {
    g(a) = 0.5 * C(d1(a), -d1(n + a));
    for (int b = 0; b < n; ++b)
      hess(a, b) = 0.25 * C(d2(a, b) + d2(n + a, n + b), d2(a, n + b) - d2(n + a, b));
  }
  const C v = (g.transpose() * hess.transpose().inverse() * g.conjugate())(0, 0);
  return v.real() - 2.0 * f(p);
}

JetPolynomial s2_by_hand() {
  // y1² + y2² - (x1 y2 - x2 y1)² / 3 in variables (x1, x2, y1, y2).
  JetPolynomial r(4, kDefaultJetDegree);
  r.add_term(monomial({2, 2}), 1.0);
  r.add_term(monomial({3, 3}), 1.0);
  r.add_term(monomial({0, 0, 3, 3}), -1.0 / 3.0);
  r.add_term(monomial({1, 1, 2, 2}), -1.0 / 3.0);
  r.add_term(monomial({0, 1, 2, 3}), 2.0 / 3.0);
  return r;
}

double max_difference(const JetPolynomial& a, const JetPolynomial& b) { return (a - b).max_abs_coefficient(); }

}  // namespace

TEST_CASE("potential expansion of flat space and the round sphere") {
  const JetPolynomial flat = potential_expansion(CurvatureTensor(3));
  CHECK(flat.terms().size() == 3u);
  for (int i = 0; i < 3; ++i) CHECK(flat.coefficient(monomial({y_var(3, i), y_var(3, i)})) == kFiberQuadraticCoefficient);
  CHECK(max_difference(potential_expansion(constant_curvature(2, 1.0)), s2_by_hand()) <= 1e-15);
}

TEST_CASE("MA residual: exact cases and a numerical oracle") {
  CHECK(ma_residual(potential_expansion(CurvatureTensor(2))).empty());

  std::mt19937_64 rng(3);
  for (int s = 0; s < 8; ++s) {
    const int n = 2 + s % 2;
    const JetPolynomial res = ma_residual(potential_expansion(random_curvature_tensor(n, rng)));
    CHECK(res.truncated(4).max_abs_coefficient() <= 1e-12);
  }
  CHECK(ma_residual(s2_by_hand()).valuation() >= 5);

  JetPolynomial bumped(2, 6);
  bumped.add_term(monomial({1, 1}), 1.0);
  bumped.add_term(monomial({1, 1, 1, 1}), 1.0);
  const JetPolynomial res = ma_residual(bumped);
  CHECK(res.homogeneous_part(4).terms().size() == 1u);
  CHECK(res.coefficient(monomial({1, 1, 1, 1})) == doctest::Approx(-6.0));

  const JetPolynomial rho = s2_by_hand();
  for (const std::vector<double> p : {std::vector<double>{0.1, -0.2, 0.3, 0.05}, {0.02, 0.01, -0.04, 0.03}}) {
    CHECK(ma_residual_at(rho, p) == doctest::Approx(residual_by_differences(rho, 2, p)).epsilon(1e-5));
  }
}

TEST_CASE("residual scaling on the sphere jet") {
  const ScalingFit fit = ma_scaling_fit(s2_by_hand(), {1e-2, 2e-2, 5e-2, 1e-1}, 200, 11);
  CHECK(fit.exponent >= 4.5);
  CHECK(ma_residual_sup(s2_by_hand(), 0.05, 100, 1) == ma_residual_sup(s2_by_hand(), 0.05, 100, 1));
}

TEST_CASE("Hessian inverse expansion") {
  RealJetMatrix m{1, {JetPolynomial(1, 6)}};
  m(0, 0).add_term(Exponents{}, 1.0);
  m(0, 0).add_term(monomial({0, 0}), 1.0);
  const RealJetMatrix inv = inverse_jet(m);
  CHECK(inv(0, 0).coefficient(Exponents{}) == 1.0);
  CHECK(inv(0, 0).coefficient(monomial({0, 0})) == -1.0);
  CHECK(inv(0, 0).coefficient(monomial({0, 0, 0, 0})) == 1.0);

  std::mt19937_64 rng(5);
  const RealJetMatrix g = normal_metric_jet(random_curvature_tensor(3, rng));
  const RealJetMatrix prod = multiply(g, inverse_jet(g));
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      JetPolynomial expect(3, 6);
      if (r == c) expect.add_term(Exponents{}, 1.0);
      CHECK((prod(r, c) - expect).truncated(2).max_abs_coefficient() <= 1e-14);
    }
}

TEST_CASE("quartic series solve yields zero quartic fiber terms") {
  CHECK(series_solve_quartic(CurvatureTensor(3)).max_abs_a() == 0.0);
  std::mt19937_64 rng(9);
  for (int s = 0; s < 20; ++s) {
    const CurvatureTensor r = random_curvature_tensor(2 + s % 2, rng);
    const QuarticCoefficients q = series_solve_quartic(r);
    CHECK(q.max_abs_a() <= 1e-9);
    for (std::size_t k = 0; k < q.a.size(); ++k) {
      CHECK(std::abs(q.curvature_residual[k] - q.arrangement_sum[k] / 3.0) <= 1e-9);
      CHECK(std::abs(q.arrangement_sum[k]) <= 1e-9);
    }
    CHECK(ma_residual(series_solution(r, q)).truncated(4).max_abs_coefficient() <= 1e-12);
  }
}

TEST_CASE("arrangement identity for quartic coefficients") {
  CHECK(distinct_arrangements(0, 0, 1, 1).size() == 6u);
  CHECK(distinct_arrangements(0, 1, 2, 2).size() == 12u);
  CHECK(distinct_arrangements(1, 1, 1, 1).size() == 1u);

  const QuarticCoefficients zero = make_quartic(2, std::vector<double>(16, 0.0));
  CHECK(arrangement_identity(zero, 0, 0, 1, 1) == 0.0);

  std::vector<double> a(16, 0.0);
  a[zero.idx(0, 0, 1, 1)] = 1.0;
  CHECK(std::abs(arrangement_identity(make_quartic(2, a), 0, 0, 1, 1)) <= 1e-12);

  a[zero.idx(0, 1, 0, 1)] = 1.0;
  CHECK(kind_of([&] { make_quartic(2, a); }) == ErrorKind::UnorderedIndices);
  CHECK(kind_of([&] { arrangement_identity(zero, 1, 0, 0, 0); }) == ErrorKind::UnorderedIndices);

  std::mt19937_64 rng(12);
  const QuarticCoefficients q = random_quartic(3, rng);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      for (int k = j; k < 3; ++k)
        for (int l = k; l < 3; ++l) {
          // All 24 position permutations, each distinct arrangement counted by its multiplicity.
          std::array<int, 4> pos = {0, 1, 2, 3}, idx = {i, j, k, l};
          double sum = 0.0;
          do {
            const std::array<int, 4> p = {idx[pos[0]], idx[pos[1]], idx[pos[2]], idx[pos[3]]};
            sum += q.B(p[0], p[1], p[2], p[3]) - 0.5 * q.C(p[3], p[2], p[0], p[1]);
          } while (std::next_permutation(pos.begin(), pos.end()));
          const double mult = 24.0 / static_cast<double>(distinct_arrangements(i, j, k, l).size());
          CHECK(std::abs(sum / mult + 2.0 * q.A(i, j, k, l)) <= 1e-12);
          CHECK(std::abs(arrangement_identity(q, i, j, k, l)) <= 1e-12);
        }
}

TEST_CASE("jet serialization roundtrip") {
  const JetPolynomial rho = potential_expansion(constant_curvature(2, 1.0));
  CHECK(max_difference(jet_from_json(jet_to_json(rho)), rho) == 0.0);
  CHECK(jet_to_text(rho).find("max_degree 6") != std::string::npos);
  CHECK(kind_of([] { jet_from_json("[1,2"); }) == ErrorKind::MalformedInput);
}
