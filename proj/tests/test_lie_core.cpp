#include <doctest.h>

#include <cmath>
#include <random>

#include "hkgeom/error.hpp"
#include "hkgeom/lie_core.hpp"
#include "hkgeom/matrix_functions.hpp"

using namespace hk;

namespace {

const Complex I1(0.0, 1.0);

Matrix diag2(Complex a, Complex b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Matrix pauli(int k) {
  Matrix s = Matrix::Zero(2, 2);
  if (k == 1) s << 0, 1, 1, 0;
  if (k == 2) s << 0, -I1, I1, 0;
  if (k == 3) s << 1, 0, 0, -1;
  return s;
}

}  // namespace

TEST_CASE("matrix exponential agrees with a Taylor sum and inverts") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a(3, 3);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) a(r, c) = Complex(normal(rng), normal(rng)) * 0.7;
    // Taylor with scaling and repeated squaring as an independent oracle.
    const int s = 8;
    const Matrix b = a / std::pow(2.0, s);
    Matrix term = Matrix::Identity(3, 3), sum = term;
    for (int k = 1; k < 30; ++k) {
      term = term * b / static_cast<double>(k);
      sum += term;
    }
    for (int k = 0; k < s; ++k) sum = sum * sum;
    const Matrix e = expm(a);
    CHECK((e - sum).norm() <= 1e-11 * sum.norm());
    CHECK((e * expm(-a) - Matrix::Identity(3, 3)).norm() <= 1e-12);
  }
}

TEST_CASE("matrix log and square root invert exp and squaring") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) a(r, c) = Complex(normal(rng), normal(rng)) * 0.5;
    CHECK((logm(expm(a)) - a).norm() <= 1e-11);
    const Matrix p = expm(a);
    const Matrix q = sqrtm(p);
    CHECK((q * q - p).norm() <= 1e-11 * p.norm());
  }
  CHECK_THROWS_AS(logm(diag2(-1.0, -1.0)), GeometryError);
}

TEST_CASE("built-in contexts pass their own validation") {
  for (const auto& name : builtin_context_names()) {
    CAPTURE(name);
    const ContextPtr ctx = builtin_context(name);
    CHECK_NOTHROW(ctx->validate());
    const RealMatrix g = ctx->inner_product_matrix();
    CHECK((g - RealMatrix::Identity(g.rows(), g.cols())).norm() <= 1e-12);
  }
}

TEST_CASE("bracket on su(2)") {
  const ContextPtr su2 = builtin_context("su2");
  const auto e1 = basis_element(su2, 0), e2 = basis_element(su2, 1), e3 = basis_element(su2, 2);
  CHECK((e1.matrix - (-0.5 * I1) * pauli(1)).norm() == doctest::Approx(0.0));
  CHECK((bracket(e1, e2).matrix - e3.matrix).norm() <= 1e-14);
  CHECK(bracket(e1, e1).matrix.norm() <= 1e-15);
  CHECK_THROWS_AS(bracket(e1, basis_element(builtin_context("su3"), 0)), GeometryError);
}

TEST_CASE("bracket on an abelian torus vanishes") {
  const ContextPtr t2 = builtin_context("t2");
  std::mt19937_64 rng(3);
  for (int k = 0; k < 5; ++k) {
    const auto x = random_element(t2, rng, 2.0), y = random_element(t2, rng, 2.0);
    CHECK(bracket(x, y).matrix.norm() <= 1e-15);
    const auto g = random_group_element(t2, rng);
    CHECK((adjoint(g, x).matrix - x.matrix).norm() <= 1e-14);
  }
}

TEST_CASE("bracket leaving the algebra is a closure violation") {
  const ContextPtr su2u1 = builtin_context("su2_u1");
  // A Hermitian matrix is not in su(2); force it through an element.
  AlgebraElement bad{pauli(3), su2u1, false};
  CHECK_THROWS_AS(bracket(bad, basis_element(su2u1, 0)), GeometryError);
}

TEST_CASE("exponential examples") {
  const ContextPtr su2 = builtin_context("su2");
  CHECK((group_exp(zero_element(su2)).matrix - Matrix::Identity(2, 2)).norm() <= 1e-15);
  const double theta = 0.8;
  const AlgebraElement x{(-0.5 * I1 * theta) * pauli(3), su2, false};
  const Matrix expected = diag2(std::exp(-0.5 * I1 * theta), std::exp(0.5 * I1 * theta));
  CHECK((group_exp(x).matrix - expected).norm() <= 1e-15);
  const AlgebraElement y{(0.3 * I1) * pauli(3), su2, false};
  CHECK((group_exp(x).matrix * group_exp(y).matrix - expm(x.matrix + y.matrix)).norm() <= 1e-14);
}

TEST_CASE("logarithm examples and roundtrip sweep") {
  const ContextPtr su2 = builtin_context("su2");
  CHECK(group_log(identity_element(su2)).matrix.norm() <= 1e-15);
  const double theta = 0.3;
  const GroupElement a{diag2(std::exp(I1 * theta), std::exp(-I1 * theta)), su2, false};
  CHECK((group_log(a).matrix - diag2(I1 * theta, -I1 * theta)).norm() <= 1e-14);

  for (const char* name : {"su2", "su3", "so3", "so4"}) {
    const ContextPtr ctx = builtin_context(name);
    std::mt19937_64 rng(11);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const auto x = random_element(ctx, rng, 1.0);
      worst = std::max(worst, (group_log(group_exp(x)).matrix - x.matrix).norm());
    }
    CAPTURE(name);
    CHECK(worst <= 1e-10);
  }
  const GroupElement minus{diag2(-1.0, -1.0), su2, false};
  try {
    group_log(minus);
    FAIL("expected a log branch failure");
  } catch (const GeometryError& e) {
    CHECK(e.kind() == ErrorKind::LogBranchFailure);
  }
}

TEST_CASE("adjoint preserves the inner product and Ad-invariance holds on the basis") {
  for (const char* name : {"su2", "su3", "so4"}) {
    const ContextPtr ctx = builtin_context(name);
    std::mt19937_64 rng(5);
    const auto x = random_element(ctx, rng, 2.0), y = random_element(ctx, rng, 2.0);
    const auto g = random_group_element(ctx, rng);
    CHECK(inner(adjoint(g, x), adjoint(g, y)) == doctest::Approx(inner(x, y)).epsilon(1e-12));
    CHECK((adjoint(identity_element(ctx), x).matrix - x.matrix).norm() == 0.0);
    const int d = ctx->dimension();
    double worst = 0.0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c) {
          const auto z = basis_element(ctx, a), xb = basis_element(ctx, b), yb = basis_element(ctx, c);
          worst = std::max(worst, std::abs(inner(bracket(z, xb), yb) + inner(xb, bracket(z, yb))));
        }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("reductive split projections") {
  for (const char* name : {"su2_u1", "su3_u2"}) {
    const ContextPtr ctx = builtin_context(name);
    std::mt19937_64 rng(9);
    const auto x = random_element(ctx, rng, 2.0), y = random_element(ctx, rng, 2.0);
    CHECK((project_h(x).matrix + project_m(x).matrix - x.matrix).norm() <= 1e-14);
    CHECK(std::abs(inner(project_h(x), project_m(y))) <= 1e-14);
    for (int h : ctx->subalgebra_indices()) {
      const auto eh = basis_element(ctx, h);
      CHECK((project_h(eh).matrix - eh.matrix).norm() <= 1e-14);
      CHECK(project_m(eh).matrix.norm() <= 1e-14);
      for (int m : ctx->complement_indices()) {
        CHECK(project_h(bracket(eh, basis_element(ctx, m))).matrix.norm() <= 1e-12);
      }
    }
  }
  const ContextPtr su2u1 = builtin_context("su2_u1");
  CHECK(project_h(basis_element(su2u1, 0)).matrix.norm() <= 1e-15);
  try {
    project_h(basis_element(builtin_context("su2"), 0));
    FAIL("expected NoSplitConfigured");
  } catch (const GeometryError& e) {
    CHECK(e.kind() == ErrorKind::NoSplitConfigured);
  }
}

TEST_CASE("complexified subgroup membership for the diagonal torus") {
  const ContextPtr ctx = builtin_context("su2_u1");
  CHECK(ctx->in_complex_subgroup(diag2(Complex(2.0, 1.0), 1.0 / Complex(2.0, 1.0))));
  Matrix off = Matrix::Identity(2, 2);
  off(0, 1) = 0.5;
  CHECK_FALSE(ctx->in_complex_subgroup(off));
}

TEST_CASE("structure text roundtrip and rejection of bad files") {
  const ContextPtr su3u2 = builtin_context("su3_u2");
  const std::string text = format_structure_text(*su3u2);
  const ContextPtr back = parse_structure_text(text);
  CHECK(back->dimension() == 8);
  CHECK(back->subalgebra_indices() == su3u2->subalgebra_indices());
  for (int k = 0; k < 8; ++k) CHECK((back->basis()[k] - su3u2->basis()[k]).norm() <= 1e-15);
  CHECK_THROWS_AS(parse_structure_text("name broken\ndimension 2\n"), GeometryError);
}
