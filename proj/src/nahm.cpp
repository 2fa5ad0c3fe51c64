#include "hkgeom/nahm.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hkgeom/error.hpp"

namespace hk {

namespace {

const Complex kI(0.0, 1.0);

GaugePath map_nodes(const GaugePath& p, PathKind kind, const std::function<Matrix(int)>& f) {
  std::vector<Matrix> v;
  v.reserve(static_cast<std::size_t>(p.nodes()));
  for (int k = 0; k < p.nodes(); ++k) v.push_back(f(k));
  return GaugePath(p.context(), kind, std::move(v));
}

PathKind algebra_kind(bool complex) { return complex ? PathKind::ComplexAlgebra : PathKind::Algebra; }

double trapezoid(const std::vector<double>& f, double h) {
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) s += (k == 0 || k + 1 == f.size()) ? 0.5 * f[k] : f[k];
  return s * h;
}

double path_pairing(const GaugePath& x, const GaugePath& y) {
  x.require_same_grid(y);
  const auto& ctx = *x.context();
  std::vector<double> f(static_cast<std::size_t>(x.nodes()));
  for (int k = 0; k < x.nodes(); ++k) f[k] = ctx.inner(x[k], y[k]);
  return trapezoid(f, x.step());
}

}  // namespace

void NahmConfiguration::require_shared_grid() const {
  for (int j = 1; j < 4; ++j) t[0].require_same_grid(t[j]);
}

GaugePath NahmConfiguration::alpha() const { return t[0] + kI * t[1]; }
GaugePath NahmConfiguration::beta() const { return t[2] + kI * t[3]; }

NahmConfiguration zero_configuration(const ContextPtr& ctx, int intervals) {
  const Matrix z = Matrix::Zero(ctx->matrix_size(), ctx->matrix_size());
  const GaugePath p = GaugePath::constant(ctx, PathKind::Algebra, intervals, z);
  return {{p, p, p, p}};
}

std::array<GaugePath, 3> nahm_residual(const NahmConfiguration& t) {
  t.require_shared_grid();
  std::array<std::vector<Matrix>, 4> d;
  for (int j = 1; j < 4; ++j) d[j] = t.t[j].derivative_values();
  const bool cplx = t.t[0].is_complex() || t.t[1].is_complex() || t.t[2].is_complex() || t.t[3].is_complex();
  auto one = [&](int a, int b, int c) {
    return map_nodes(t.t[0], algebra_kind(cplx), [&](int k) {
      return Matrix(d[a][k] + commutator(t.t[0][k], t.t[a][k]) + commutator(t.t[b][k], t.t[c][k]));
    });
  };
  return {one(1, 2, 3), one(2, 3, 1), one(3, 1, 2)};
}

double residual_sup(const std::array<GaugePath, 3>& r) {
  return std::max({r[0].sup_norm(), r[1].sup_norm(), r[2].sup_norm()});
}

GaugePath baby_nahm_residual(const GaugePath& t0, const GaugePath& t1) {
  t0.require_same_grid(t1);
  const auto d = t1.derivative_values();
  return map_nodes(t1, algebra_kind(t0.is_complex() || t1.is_complex()),
                   [&](int k) { return Matrix(d[k] + commutator(t0[k], t1[k])); });
}

GaugePath gauge_act_connection(const GaugePath& g, const GaugePath& a) {
  g.require_same_grid(a);
  const auto dg = g.derivative_values();
  return map_nodes(a, algebra_kind(g.is_complex() || a.is_complex()), [&](int k) {
    const Matrix ginv = g[k].inverse();
    return Matrix(g[k] * a[k] * ginv - dg[k] * ginv);
  });
}

NahmConfiguration gauge_act(const GaugePath& g, const NahmConfiguration& t) {
  t.require_shared_grid();
  NahmConfiguration out = t;
  out.t[0] = gauge_act_connection(g, t.t[0]);
  for (int j = 1; j < 4; ++j) {
    g.require_same_grid(t.t[j]);
    out.t[j] = map_nodes(t.t[j], algebra_kind(g.is_complex() || t.t[j].is_complex()),
                         [&](int k) { return Matrix(g[k] * t.t[j][k] * g[k].inverse()); });
  }
  return out;
}

GaugePath multiply_paths(const GaugePath& g, const GaugePath& h) {
  g.require_same_grid(h);
  const bool cplx = g.is_complex() || h.is_complex();
  return map_nodes(g, cplx ? PathKind::ComplexGroup : PathKind::Group,
                   [&](int k) { return Matrix(g[k] * h[k]); });
}

GaugePath solve_gauge_ode(const GaugePath& a) {
  const auto& ctx = *a.context();
  const bool cplx = a.is_complex();
  const int n = a.intervals();
  const double h = a.step();
  const int m = ctx.matrix_size();
  std::vector<Matrix> g(static_cast<std::size_t>(n + 1));
  g[n] = Matrix::Identity(m, m);
  for (int k = n; k >= 1; --k) {
    const double t = a.t(k);
    const Matrix& y = g[k];
    const Matrix a_mid = a.interpolate(t - 0.5 * h);
    const Matrix k1 = y * a[k];
    const Matrix k2 = (y - 0.5 * h * k1) * a_mid;
    const Matrix k3 = (y - 0.5 * h * k2) * a_mid;
    const Matrix k4 = (y - h * k3) * a[k - 1];
    const Matrix next = y - (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    g[k - 1] = cplx ? ctx.reproject_complex_group(next) : ctx.reproject_group(next);
  }
  return GaugePath(a.context(), cplx ? PathKind::ComplexGroup : PathKind::Group, std::move(g));
}

BabyNahmPair embed_tangent(const GroupElement& a, const AlgebraElement& v, int intervals) {
  const AlgebraElement log_a = group_log(a);
  const Matrix l = log_a.matrix;
  const GaugePath t0 = GaugePath::constant(a.context, PathKind::Algebra, intervals, l);
  const GaugePath t1 = GaugePath::from_function(a.context, PathKind::Algebra, intervals, [&](double t) {
    return Matrix(expm((1.0 - t) * l) * v.matrix * expm(-(1.0 - t) * l));
  });
  return {t0, t1};
}

BabyNahmPair embed_tangent(const GroupElement& a, const AlgebraElement& v, const GaugePath& h_path) {
  const auto& ctx = *a.context;
  const int m = ctx.matrix_size();
  if ((h_path.start() - a.matrix).norm() > 1e-8 * std::max(1.0, a.matrix.norm())) {
    fail(ErrorKind::MalformedInput, "h path must start at a");
  }
  const bool ends_at_identity = (h_path.end() - Matrix::Identity(m, m)).norm() <= 1e-8;
  if (!ends_at_identity && !(ctx.has_split() && ctx.h_marker() && ctx.in_complex_subgroup(h_path.end(), 1e-8))) {
    fail(ErrorKind::MalformedInput, "h path must end at the identity or in H");
  }
  const auto dh = h_path.derivative_values();
  const GaugePath t0 = map_nodes(h_path, PathKind::Algebra,
                                 [&](int k) { return Matrix(-dh[k] * h_path[k].inverse()); });
  const GaugePath t1 = map_nodes(h_path, PathKind::Algebra,
                                 [&](int k) { return Matrix(h_path[k] * v.matrix * h_path[k].inverse()); });
  return {t0, t1};
}

namespace {

GroupElement roundtrip_from(const BabyNahmPair& p, const ContextPtr& ctx) {
  const GaugePath alpha = p.t0 + kI * p.t1;
  const GaugePath g = solve_gauge_ode(alpha);
  return {g.start().inverse(), ctx, true};
}

}  // namespace

GroupElement roundtrip_adapted(const GroupElement& a, const AlgebraElement& v, int intervals) {
  return roundtrip_from(embed_tangent(a, v, intervals), a.context);
}

GroupElement roundtrip_adapted(const GroupElement& a, const AlgebraElement& v, const GaugePath& h_path) {
  return roundtrip_from(embed_tangent(a, v, h_path), a.context);
}

double l2_metric(const PathTangent& x, const PathTangent& y) {
  double s = 0.0;
  for (int j = 0; j < 4; ++j) s += path_pairing(x.t[j], y.t[j]);
  return s;
}

double omega_I(const PathTangent& x, const PathTangent& y) {
  return path_pairing(x.t[0], y.t[1]) - path_pairing(x.t[1], y.t[0]) + path_pairing(x.t[2], y.t[3]) -
         path_pairing(x.t[3], y.t[2]);
}

PathTangent apply_I(const PathTangent& x) {
  return {{-1.0 * x.t[1], x.t[0], -1.0 * x.t[3], x.t[2]}};
}

double kahler_potential_f(const NahmConfiguration& t) {
  return 0.5 * path_pairing(t.t[1], t.t[1]) + 0.25 * path_pairing(t.t[2], t.t[2]) +
         0.25 * path_pairing(t.t[3], t.t[3]);
}

NahmConfiguration displaced(const NahmConfiguration& t, const PathTangent& x, double eps) {
  NahmConfiguration out = t;
  for (int j = 0; j < 4; ++j) out.t[j] = t.t[j] + eps * x.t[j];
  return out;
}

double d_I_df(const NahmConfiguration& t, const PathTangent& x, const PathTangent& y, double increment) {
  const double e = increment;
  auto df = [&](const NahmConfiguration& base, const PathTangent& w) {
    return (kahler_potential_f(displaced(base, w, e)) - kahler_potential_f(displaced(base, w, -e))) / (2.0 * e);
  };
  auto i_df = [&](const NahmConfiguration& base, const PathTangent& z) { return -df(base, apply_I(z)); };
  const double xy = (i_df(displaced(t, x, e), y) - i_df(displaced(t, x, -e), y)) / (2.0 * e);
  const double yx = (i_df(displaced(t, y, e), x) - i_df(displaced(t, y, -e), x)) / (2.0 * e);
  return xy - yx;
}

std::array<AlgebraElement, 3> moment_map_H(const NahmConfiguration& t) {
  const auto& ctx = t.context();
  std::array<AlgebraElement, 3> out;
  for (int j = 1; j < 4; ++j) out[j - 1] = {ctx->project_h(t.t[j].end()), ctx, t.t[j].is_complex()};
  return out;
}

NahmConfiguration s1_action(double theta, const NahmConfiguration& t) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  NahmConfiguration out = t;
  out.t[2] = c * t.t[2] - s * t.t[3];
  out.t[3] = s * t.t[2] + c * t.t[3];
  return out;
}

NahmConfiguration nahm_integrate(const std::array<AlgebraElement, 3>& initial, const GaugePath& t0, double bound) {
  const int n = t0.intervals();
  const double h = t0.step();
  using State = std::array<Matrix, 3>;
  auto rhs = [](const Matrix& a0, const State& s) {
    return State{Matrix(-commutator(a0, s[0]) - commutator(s[1], s[2])),
                 Matrix(-commutator(a0, s[1]) - commutator(s[2], s[0])),
                 Matrix(-commutator(a0, s[2]) - commutator(s[0], s[1]))};
  };
  auto axpy = [](const State& y, double c, const State& k) {
    return State{Matrix(y[0] + c * k[0]), Matrix(y[1] + c * k[1]), Matrix(y[2] + c * k[2])};
  };
  std::array<std::vector<Matrix>, 3> out;
  State y{initial[0].matrix, initial[1].matrix, initial[2].matrix};
  for (int j = 0; j < 3; ++j) out[j].push_back(y[j]);
  for (int k = 0; k < n; ++k) {
    const Matrix mid = t0.interpolate(t0.t(k) + 0.5 * h);
    const State k1 = rhs(t0[k], y);
    const State k2 = rhs(mid, axpy(y, 0.5 * h, k1));
    const State k3 = rhs(mid, axpy(y, 0.5 * h, k2));
    const State k4 = rhs(t0[k + 1], axpy(y, h, k3));
    for (int j = 0; j < 3; ++j) {
      y[j] += (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
      const double norm = y[j].norm();
      if (!std::isfinite(norm) || norm > bound) {
        fail(ErrorKind::BlowupDetected, "Nahm flow exceeded the norm bound at t = " + std::to_string(t0.t(k + 1)));
      }
      out[j].push_back(y[j]);
    }
  }
  const PathKind kind = t0.is_complex() || initial[0].complexified ? PathKind::ComplexAlgebra : PathKind::Algebra;
  return {{t0, GaugePath(t0.context(), kind, std::move(out[0])), GaugePath(t0.context(), kind, std::move(out[1])),
           GaugePath(t0.context(), kind, std::move(out[2]))}};
}

void write_configuration(const NahmConfiguration& t, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  nlohmann::json manifest;
  manifest["context"] = t.context()->name();
  manifest["grid_size"] = t.intervals();
  manifest["structure"] = format_structure_text(*t.context());
  nlohmann::json files = nlohmann::json::array();
  for (int j = 0; j < 4; ++j) {
    const std::string name = "T" + std::to_string(j) + ".csv";
    std::ofstream(fs::path(dir) / name) << t.t[j].to_csv();
    files.push_back({{"file", name}, {"kind", to_string(t.t[j].kind())}});
  }
  manifest["paths"] = files;
  std::ofstream(fs::path(dir) / "manifest.json") << manifest.dump(2) << '\n';
}

NahmConfiguration read_configuration(const std::string& dir) {
  namespace fs = std::filesystem;
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    if (!in) fail(ErrorKind::MalformedInput, "cannot read " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  try {
    const auto manifest = nlohmann::json::parse(slurp(fs::path(dir) / "manifest.json"));
    const ContextPtr ctx = parse_structure_text(manifest.at("structure").get<std::string>());
    const auto& paths = manifest.at("paths");
    if (paths.size() != 4) fail(ErrorKind::MalformedInput, "manifest must list four paths");
    std::vector<GaugePath> t;
    for (const auto& p : paths) {
      t.push_back(GaugePath::from_csv(ctx, path_kind_from_string(p.at("kind").get<std::string>()),
                                      slurp(fs::path(dir) / p.at("file").get<std::string>())));
    }
    NahmConfiguration out{{t[0], t[1], t[2], t[3]}};
    out.require_shared_grid();
    if (out.intervals() != manifest.at("grid_size").get<int>()) fail(ErrorKind::GridMismatch, "grid size disagrees with manifest");
    return out;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::MalformedInput, std::string("configuration manifest: ") + e.what());
  }
}

}  // namespace hk
