#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "hkgeom/complexify.hpp"
#include "hkgeom/error.hpp"
#include "hkgeom/gauge_path.hpp"
#include "hkgeom/lie_core.hpp"
#include "hkgeom/matrix_functions.hpp"
#include "hkgeom/nahm.hpp"

using namespace hk;

namespace {

const Complex I1(0.0, 1.0);

Matrix e(int k) {
  Matrix s = Matrix::Zero(2, 2);
  if (k == 1) s << 0, 1, 1, 0;
  if (k == 2) s << 0, -I1, I1, 0;
  if (k == 3) s << 1, 0, 0, -1;
  return -0.5 * I1 * s;
}

GaugePath alg(const ContextPtr& ctx, int n, const std::function<Matrix(double)>& f) {
  return GaugePath::from_function(ctx, PathKind::Algebra, n, f);
}

GaugePath constant(const ContextPtr& ctx, int n, const Matrix& m) {
  return GaugePath::constant(ctx, PathKind::Algebra, n, m);
}

}  // namespace

TEST_CASE("path derivatives and interpolation") {
  const ContextPtr ctx = builtin_context("su2");
  auto f = [](double t) { return Matrix(std::sin(2.0 * t) * e(1) + t * t * t * e(2)); };
  auto df = [](double t) { return Matrix(2.0 * std::cos(2.0 * t) * e(1) + 3.0 * t * t * e(2)); };
  double err[2];
  for (int pass = 0; pass < 2; ++pass) {
    const int n = pass ? 80 : 40;
    const GaugePath p = alg(ctx, n, f);
    const auto d = p.derivative_values();
    err[pass] = 0.0;
    for (int k = 0; k <= n; ++k) err[pass] = std::max(err[pass], (d[k] - df(p.t(k))).norm());
  }
  CHECK(std::log2(err[0] / err[1]) >= 3.7);

  const GaugePath p = alg(ctx, 50, f);
  CHECK((p.interpolate(0.5) - f(0.5)).norm() <= 1e-14);
  CHECK((p.interpolate(0.013) - f(0.013)).norm() <= 1e-7);
  CHECK(p.derivative().kind() == PathKind::Algebra);
  CHECK(constant(ctx, 10, e(3)).derivative().sup_norm() <= 1e-14);
}

TEST_CASE("path validation and grid checks") {
  const ContextPtr ctx = builtin_context("su2");
  const GaugePath a = constant(ctx, 10, e(1));
  const GaugePath b = constant(ctx, 20, e(1));
  bool grid = false;
  try {
    a.require_same_grid(b);
  } catch (const GeometryError& err) {
    grid = err.kind() == ErrorKind::GridMismatch;
  }
  CHECK(grid);
  CHECK_THROWS_AS(a + b, GeometryError);
  CHECK((a - a).sup_norm() == 0.0);
  CHECK((2.0 * a).max_distance(a + a) == 0.0);
  CHECK_THROWS_AS(GaugePath::constant(ctx, PathKind::Group, 4, 2.0 * Matrix::Identity(2, 2)).validate(), GeometryError);
  CHECK(path_kind_from_string(to_string(PathKind::ComplexGroup)) == PathKind::ComplexGroup);
}

TEST_CASE("path CSV roundtrip") {
  const ContextPtr ctx = builtin_context("su2");
  const GaugePath p = alg(ctx, 16, [](double t) { return Matrix(std::cos(t) * e(1) + t * e(3)); });
  const std::string csv = p.to_csv();
  CHECK(csv.rfind("t,re_", 0) == 0);
  CHECK(GaugePath::from_csv(ctx, PathKind::Algebra, csv).max_distance(p) == 0.0);
  CHECK_THROWS_AS(GaugePath::from_csv(ctx, PathKind::Algebra, "t,x\n0,abc\n"), GeometryError);
}

TEST_CASE("Nahm residual examples") {
  const ContextPtr ctx = builtin_context("su2");
  NahmConfiguration c = zero_configuration(ctx, 40);
  for (int j = 0; j < 4; ++j) c.t[j] = constant(ctx, 40, 0.3 * (j + 1) * e(3));
  CHECK(residual_sup(nahm_residual(c)) <= 1e-13);

  const Matrix a = 0.8 * e(1) + 0.3 * e(2);
  const Matrix v = e(3);
  for (int n : {100, 200}) {
    NahmConfiguration top = zero_configuration(ctx, n);
    top.t[0] = constant(ctx, n, a);
    top.t[1] = alg(ctx, n, [&](double t) { return Matrix(expm(-t * a) * v * expm(t * a)); });
    CHECK(residual_sup(nahm_residual(top)) <= 1e-7);
    CHECK(baby_nahm_residual(top.t[0], top.t[1]).sup_norm() <= 1e-7);
  }

  const ContextPtr torus = builtin_context("t2");
  const Matrix d = torus->basis()[0];
  const GaugePath t1 = alg(torus, 32, [&](double t) { return Matrix(t * t * d); });
  const GaugePath t0 = constant(torus, 32, torus->basis()[1]);
  CHECK(baby_nahm_residual(t0, t1).max_distance(t1.derivative()) <= 1e-14);
  CHECK(baby_nahm_residual(zero_configuration(ctx, 8).t[0], constant(ctx, 8, e(2))).sup_norm() == 0.0);
}

TEST_CASE("gauge actions and the gauge ODE") {
  const ContextPtr ctx = builtin_context("su2");
  const int n = 400;
  const GaugePath id = GaugePath::constant(ctx, PathKind::Group, n, Matrix::Identity(2, 2));
  NahmConfiguration t = nahm_integrate({AlgebraElement{0.3 * e(1), ctx}, AlgebraElement{0.2 * e(2), ctx},
                                        AlgebraElement{0.5 * e(3), ctx}},
                                       alg(ctx, n, [](double s) { return Matrix(std::cos(s) * e(1)); }));
  const NahmConfiguration same = gauge_act(id, t);
  for (int j = 0; j < 4; ++j) CHECK(same.t[j].max_distance(t.t[j]) <= 1e-15);

  auto make_g = [&](const Matrix& x, double w) {
    return GaugePath::from_function(ctx, PathKind::Group, n, [&](double s) {
      return Matrix(expm(std::sin(M_PI * s) * w * x));
    });
  };
  const GaugePath g = make_g(e(1), 0.7), h = make_g(e(2), 0.4);
  const NahmConfiguration lhs = gauge_act(multiply_paths(g, h), t);
  const NahmConfiguration rhs = gauge_act(g, gauge_act(h, t));
  for (int j = 0; j < 4; ++j) CHECK(lhs.t[j].max_distance(rhs.t[j]) <= 1e-8);
  CHECK(residual_sup(nahm_residual(gauge_act(g, t))) <= 1e-7);

  CHECK(solve_gauge_ode(constant(ctx, 50, Matrix::Zero(2, 2))).max_distance(
            GaugePath::constant(ctx, PathKind::Group, 50, Matrix::Identity(2, 2))) <= 1e-15);
  const Matrix cst = 0.9 * e(1) - 0.4 * e(3);
  const GaugePath sol = solve_gauge_ode(constant(ctx, 200, cst));
  double worst = 0.0;
  for (int k = 0; k <= 200; ++k) worst = std::max(worst, (sol[k] - expm((sol.t(k) - 1.0) * cst)).norm());
  CHECK(worst <= 1e-10);

  const GaugePath a = alg(ctx, 200, [](double s) { return Matrix(s * e(1) + std::cos(3 * s) * e(2)); });
  CHECK(gauge_act_connection(solve_gauge_ode(a), a).sup_norm() <= 1e-8);
}

TEST_CASE("tangent embedding and the roundtrip to the complex group") {
  const ContextPtr ctx = builtin_context("su2");
  const GroupElement e0{Matrix::Identity(2, 2), ctx};
  const AlgebraElement v{0.7 * e(2), ctx};
  const BabyNahmPair p = embed_tangent(e0, v, 64);
  CHECK(p.t0.sup_norm() <= 1e-15);
  CHECK(p.t1.max_distance(constant(ctx, 64, v.matrix)) <= 1e-15);
  CHECK(baby_nahm_residual(p.t0, p.t1).sup_norm() <= 1e-12);

  const ContextPtr torus = builtin_context("t1");
  const Matrix l = 0.6 * torus->basis()[0];
  const BabyNahmPair q = embed_tangent(GroupElement{expm(l), torus}, AlgebraElement{torus->basis()[0], torus}, 32);
  CHECK(q.t0.max_distance(constant(torus, 32, l)) <= 1e-12);

  CHECK((roundtrip_adapted(e0, v, 400).matrix - expm(I1 * v.matrix)).norm() <= 1e-10);
  std::mt19937_64 rng(41);
  for (int s = 0; s < 5; ++s) {
    const GroupElement a = random_group_element(ctx, rng);
    CHECK((roundtrip_adapted(a, zero_element(ctx), 2000).matrix - a.matrix).norm() <= 1e-12);
    const AlgebraElement w = random_element(ctx, rng, 2.0);
    const Matrix exact = phi_map({a, w}).matrix;
    CHECK((roundtrip_adapted(a, w, 1000).matrix - exact).norm() <= 1e-9);
  }
}

TEST_CASE("path-space metric, symplectic form and potential") {
  const ContextPtr ctx = builtin_context("su2");
  const int n = 32;
  PathTangent x = zero_configuration(ctx, n), y = zero_configuration(ctx, n);
  CHECK(l2_metric(x, x) == 0.0);
  x.t[1] = constant(ctx, n, e(1));
  y.t[1] = constant(ctx, n, e(1));
  CHECK(l2_metric(x, y) == doctest::Approx(1.0));

  PathTangent a = zero_configuration(ctx, n), b = zero_configuration(ctx, n);
  a.t[0] = constant(ctx, n, e(1));
  b.t[1] = constant(ctx, n, e(1));
  CHECK(omega_I(a, b) == doctest::Approx(1.0));
  CHECK(omega_I(a, a) == 0.0);
  const PathTangent ia = apply_I(a);
  CHECK(ia.t[1].max_distance(a.t[0]) == 0.0);
  CHECK(apply_I(ia).t[0].max_distance(-1.0 * a.t[0]) == 0.0);

  NahmConfiguration t = zero_configuration(ctx, n);
  CHECK(kahler_potential_f(t) == 0.0);
  t.t[1] = constant(ctx, n, e(1));
  CHECK(kahler_potential_f(t) == doctest::Approx(0.5));
  CHECK(displaced(t, x, 0.5).t[1].max_distance(constant(ctx, n, 1.5 * e(1))) <= 1e-15);
}

TEST_CASE("moment map and circle action") {
  const ContextPtr ctx = builtin_context("su2_u1");
  const int n = 16;
  NahmConfiguration t = zero_configuration(ctx, n);
  t.t[1] = constant(ctx, n, e(3));
  const auto phi = moment_map_H(t);
  CHECK((phi[0].matrix - e(3)).norm() <= 1e-15);
  CHECK(phi[1].matrix.norm() == 0.0);
  t.t[2] = constant(ctx, n, e(1));
  CHECK(moment_map_H(t)[1].matrix.norm() <= 1e-15);

  t.t[3] = constant(ctx, n, e(2));
  const NahmConfiguration r0 = s1_action(0.0, t);
  for (int j = 0; j < 4; ++j) CHECK(r0.t[j].max_distance(t.t[j]) == 0.0);
  const NahmConfiguration r = s1_action(M_PI / 2.0, t);
  CHECK(r.t[2].max_distance(-1.0 * t.t[3]) <= 1e-15);
  CHECK(r.t[3].max_distance(t.t[2]) <= 1e-15);
  CHECK(r.t[1].max_distance(t.t[1]) == 0.0);
  CHECK_THROWS_AS(moment_map_H(zero_configuration(builtin_context("su2"), 4)), GeometryError);
}

TEST_CASE("Nahm integration") {
  const ContextPtr ctx = builtin_context("su2");
  const GaugePath zero = constant(ctx, 100, Matrix::Zero(2, 2));
  const NahmConfiguration z = nahm_integrate({zero_element(ctx), zero_element(ctx), zero_element(ctx)}, zero);
  for (int j = 0; j < 4; ++j) CHECK(z.t[j].sup_norm() == 0.0);

  const NahmConfiguration c = nahm_integrate({AlgebraElement{0.4 * e(3), ctx}, AlgebraElement{0.2 * e(3), ctx},
                                              AlgebraElement{-0.1 * e(3), ctx}},
                                             zero);
  CHECK(c.t[1].max_distance(constant(ctx, 100, 0.4 * e(3))) <= 1e-15);

  const NahmConfiguration top = nahm_integrate({AlgebraElement{0.3 * e(1), ctx}, AlgebraElement{0.5 * e(2), ctx},
                                                AlgebraElement{0.7 * e(3), ctx}},
                                               constant(ctx, 4000, Matrix::Zero(2, 2)));
  CHECK(residual_sup(nahm_residual(top)) <= 1e-8);

  bool blew = false;
  try {
    nahm_integrate({AlgebraElement{-40.0 * e(1), ctx}, AlgebraElement{-40.0 * e(2), ctx},
                    AlgebraElement{-40.0 * e(3), ctx}},
                   constant(ctx, 50, Matrix::Zero(2, 2)), 1e3);
  } catch (const GeometryError& err) {
    blew = err.kind() == ErrorKind::BlowupDetected;
  }
  CHECK(blew);
}

TEST_CASE("configuration files roundtrip") {
  const ContextPtr ctx = builtin_context("su2_u1");
  std::mt19937_64 rng(44);
  NahmConfiguration t = zero_configuration(ctx, 12);
  for (int j = 0; j < 4; ++j) {
    const AlgebraElement x = random_element(ctx, rng, 1.0);
    t.t[j] = alg(ctx, 12, [&](double s) { return Matrix(std::sin(s + j) * x.matrix); });
  }
  const auto dir = std::filesystem::temp_directory_path() / "hkgeom_config_roundtrip";
  std::filesystem::remove_all(dir);
  write_configuration(t, dir.string());
  const NahmConfiguration back = read_configuration(dir.string());
  for (int j = 0; j < 4; ++j) CHECK(back.t[j].max_distance(t.t[j]) <= 1e-15);
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(read_configuration((dir / "missing").string()), GeometryError);
}
