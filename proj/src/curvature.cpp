#include "hkgeom/curvature.hpp"

#include <cmath>

#include <json.hpp>

#include "hkgeom/error.hpp"

namespace hk {

CurvatureTensor::CurvatureTensor(int dimension) : n_(dimension) {
  if (dimension < 1) fail(ErrorKind::MalformedInput, "curvature tensor dimension must be positive");
  data_.assign(static_cast<std::size_t>(n_ * n_ * n_ * n_), 0.0);
}

double CurvatureTensor::symmetry_defect() const {
  const auto& r = *this;
  double worst = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) {
          const double v = r(i, j, k, l);
          worst = std::max(worst, std::abs(v + r(j, i, k, l)));
          worst = std::max(worst, std::abs(v + r(i, j, l, k)));
          worst = std::max(worst, std::abs(v - r(k, l, i, j)));
          worst = std::max(worst, std::abs(v + r(j, k, i, l) + r(k, i, j, l)));
        }
  return worst;
}

void CurvatureTensor::validate(double tol) const {
  if (symmetry_defect() > tol * std::max(1.0, max_abs())) {
    fail(ErrorKind::SymmetryViolation, "tensor violates the algebraic curvature identities");
  }
}

bool CurvatureTensor::is_zero(double tol) const { return max_abs() <= tol; }

double CurvatureTensor::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double CurvatureTensor::max_abs_difference(const CurvatureTensor& other) const {
  if (other.n_ != n_) fail(ErrorKind::MalformedInput, "dimension mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < data_.size(); ++k) m = std::max(m, std::abs(data_[k] - other.data_[k]));
  return m;
}

CurvatureTensor& CurvatureTensor::operator+=(const CurvatureTensor& other) {
  if (other.n_ != n_) fail(ErrorKind::MalformedInput, "dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

CurvatureTensor& CurvatureTensor::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

CurvatureTensor constant_curvature(int n, double kappa) {
  const RealMatrix id = RealMatrix::Identity(n, n);
  return 0.5 * kappa * kulkarni_nomizu(id, id);
}

CurvatureTensor kulkarni_nomizu(const RealMatrix& h, const RealMatrix& k) {
  const int n = static_cast<int>(h.rows());
  CurvatureTensor r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          r(i, j, a, b) = h(i, a) * k(j, b) + h(j, b) * k(i, a) - h(i, b) * k(j, a) - h(j, a) * k(i, b);
  return r;
}

CurvatureTensor product_curvature(const CurvatureTensor& a, const CurvatureTensor& b) {
  const int na = a.dimension();
  const int nb = b.dimension();
  CurvatureTensor r(na + nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j)
      for (int k = 0; k < na; ++k)
        for (int l = 0; l < na; ++l) r(i, j, k, l) = a(i, j, k, l);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j)
      for (int k = 0; k < nb; ++k)
        for (int l = 0; l < nb; ++l) r(na + i, na + j, na + k, na + l) = b(i, j, k, l);
  return r;
}

CurvatureTensor random_curvature_tensor(int n, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    CurvatureTensor noise(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) noise(i, j, k, l) = normal(rng);

    CurvatureTensor pairs(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            auto anti = [&](int a, int b, int c, int d) {
              return 0.25 * (noise(a, b, c, d) - noise(b, a, c, d) - noise(a, b, d, c) + noise(b, a, d, c));
            };
            pairs(i, j, k, l) = 0.5 * (anti(i, j, k, l) + anti(k, l, i, j));
          }

    CurvatureTensor r(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            const double cyclic = (pairs(i, j, k, l) + pairs(j, k, i, l) + pairs(k, i, j, l)) / 3.0;
            r(i, j, k, l) = scale * (pairs(i, j, k, l) - cyclic);
          }
    if (r.symmetry_defect() <= 1e-12 * std::max(1.0, r.max_abs())) return r;
  }
  fail(ErrorKind::SymmetryViolation, "could not generate an admissible curvature tensor");
}

double sectional(const CurvatureTensor& r, int i, int j) {
  const int n = r.dimension();
  if (i < 0 || j < 0 || i >= n || j >= n) fail(ErrorKind::IndexOutOfRange, "plane index out of range");
  if (i == j) fail(ErrorKind::EqualIndices, "sectional curvature needs two distinct directions");
  return r(i, j, i, j);
}

RealJetMatrix normal_metric_jet(const CurvatureTensor& r) {
  r.validate();
  const int n = r.dimension();
  RealJetMatrix g{n, {}};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      JetPolynomial entry(n, 2);
      if (i == j) entry.add_term(Exponents{}, 1.0);
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) entry.add_term(monomial({p, q}), -r(i, p, j, q) / 3.0);
      g.entries.push_back(std::move(entry));
    }
  return g;
}

MetricChart chart_from_jet(const RealJetMatrix& jet) {
  MetricChart chart;
  chart.dimension = jet.n;
  chart.metric = [jet](std::span<const double> x) {
    RealMatrix g(jet.n, jet.n);
    for (int i = 0; i < jet.n; ++i)
      for (int j = 0; j < jet.n; ++j) g(i, j) = jet(i, j).evaluate(x);
    return g;
  };
  return chart;
}

namespace {

// For u = kappa r^2: f = sin^2(sqrt u)/u and (1 - f)/r^2 = kappa (1 - f)/u,
// with the analytic continuation through u <= 0.
void space_form_factors(double kappa, double r2, double& f, double& b) {
  const double u = kappa * r2;
  if (std::abs(u) < 1e-3) {
    f = 1.0 - u / 3.0 + 2.0 * u * u / 45.0 - u * u * u / 315.0;
    b = kappa * (1.0 / 3.0 - 2.0 * u / 45.0 + u * u / 315.0 - 2.0 * u * u * u / 14175.0);
    return;
  }
  if (u > 0) {
    const double s = std::sqrt(u);
    f = std::sin(s) * std::sin(s) / u;
  } else {
    const double s = std::sqrt(-u);
    f = std::sinh(s) * std::sinh(s) / (-u);
  }
  b = (1.0 - f) / r2;
}

}  // namespace

MetricChart space_form_normal_chart(int n, double kappa) {
  MetricChart chart;
  chart.dimension = n;
  chart.metric = [n, kappa](std::span<const double> x) {
    double r2 = 0.0;
    for (int k = 0; k < n; ++k) r2 += x[k] * x[k];
    double f = 1.0, b = 0.0;
    space_form_factors(kappa, r2, f, b);
    RealMatrix g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = (i == j ? f : 0.0) + b * x[i] * x[j];
    return g;
  };
  return chart;
}

CurvatureTensor curvature_from_chart(const MetricChart& chart, double step) {
  const int n = chart.dimension;
  const double h = step;
  std::vector<double> point(static_cast<std::size_t>(n), 0.0);

  auto eval = [&](const std::vector<double>& x) {
    RealMatrix g = chart.metric(std::span<const double>(x.data(), x.size()));
    if (g.rows() != n || g.cols() != n) fail(ErrorKind::MalformedInput, "chart returned a metric of the wrong size");
    Eigen::LLT<RealMatrix> llt(g);
    if (llt.info() != Eigen::Success) fail(ErrorKind::SingularMetric, "metric not positive-definite on the stencil");
    return g;
  };

  // Fourth-order central stencils.
  const int offsets[4] = {-2, -1, 1, 2};
  const double first_w[4] = {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};

  const RealMatrix g0 = eval(point);
  std::vector<RealMatrix> dg(n, RealMatrix::Zero(n, n));
  std::vector<std::vector<RealMatrix>> ddg(n, std::vector<RealMatrix>(n, RealMatrix::Zero(n, n)));

  for (int a = 0; a < n; ++a) {
    std::vector<RealMatrix> line(4);
    for (int s = 0; s < 4; ++s) {
      std::vector<double> x(point);
      x[a] = offsets[s] * h;
      line[s] = eval(x);
      dg[a] += first_w[s] * line[s] / h;
    }
    ddg[a][a] = (-line[0] + 16.0 * line[1] - 30.0 * g0 + 16.0 * line[2] - line[3]) / (12.0 * h * h);
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      RealMatrix acc = RealMatrix::Zero(n, n);
      for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t) {
          std::vector<double> x(point);
          x[a] = offsets[s] * h;
          x[b] = offsets[t] * h;
          acc += first_w[s] * first_w[t] * eval(x);
        }
      ddg[a][b] = ddg[b][a] = acc / (h * h);
    }

  const RealMatrix ginv = g0.inverse();
  auto idx3 = [n](int a, int b, int c) { return static_cast<std::size_t>((a * n + b) * n + c); };
  auto idx4 = [n](int a, int b, int c, int d) { return static_cast<std::size_t>(((a * n + b) * n + c) * n + d); };

  // Christoffel symbols of the first kind and their derivatives.
  std::vector<double> gamma1(static_cast<std::size_t>(n * n * n));
  std::vector<double> dgamma1(static_cast<std::size_t>(n * n * n * n));
  for (int l = 0; l < n; ++l)
    for (int v = 0; v < n; ++v)
      for (int s = 0; s < n; ++s) {
        gamma1[idx3(l, v, s)] = 0.5 * (dg[v](l, s) + dg[s](l, v) - dg[l](v, s));
        for (int m = 0; m < n; ++m) {
          dgamma1[idx4(m, l, v, s)] = 0.5 * (ddg[m][v](l, s) + ddg[m][s](l, v) - ddg[m][l](v, s));
        }
      }
  // Γ^ρ_{νσ} and ∂_μ Γ^ρ_{νσ}.
  std::vector<double> gamma(static_cast<std::size_t>(n * n * n), 0.0);
  std::vector<double> dgamma(static_cast<std::size_t>(n * n * n * n), 0.0);
  for (int rho = 0; rho < n; ++rho)
    for (int v = 0; v < n; ++v)
      for (int s = 0; s < n; ++s) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l) acc += ginv(rho, l) * gamma1[idx3(l, v, s)];
        gamma[idx3(rho, v, s)] = acc;
      }
  for (int m = 0; m < n; ++m) {
    const RealMatrix dginv = -ginv * dg[m] * ginv;
    for (int rho = 0; rho < n; ++rho)
      for (int v = 0; v < n; ++v)
        for (int s = 0; s < n; ++s) {
          double acc = 0.0;
          for (int l = 0; l < n; ++l) {
            acc += dginv(rho, l) * gamma1[idx3(l, v, s)] + ginv(rho, l) * dgamma1[idx4(m, l, v, s)];
          }
          dgamma[idx4(m, rho, v, s)] = acc;
        }
  }

  // R(∂_μ, ∂_ν)∂_σ = R^ρ_{σμν} ∂_ρ with
  //   R^ρ_{σμν} = ∂_μ Γ^ρ_{νσ} - ∂_ν Γ^ρ_{μσ} + Γ^ρ_{μλ} Γ^λ_{νσ} - Γ^ρ_{νλ} Γ^λ_{μσ}.
  // The stored slot order is R_ijkl = g(R(∂_i, ∂_j)∂_l, ∂_k) = g_{kρ} R^ρ_{lij};
  // this is the one place where the textbook index order is translated.
  CurvatureTensor r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double acc = 0.0;
          for (int rho = 0; rho < n; ++rho) {
            double up = dgamma[idx4(i, rho, j, l)] - dgamma[idx4(j, rho, i, l)];
            for (int lam = 0; lam < n; ++lam) {
              up += gamma[idx3(rho, i, lam)] * gamma[idx3(lam, j, l)] - gamma[idx3(rho, j, lam)] * gamma[idx3(lam, i, l)];
            }
            acc += g0(k, rho) * up;
          }
          r(i, j, k, l) = acc;
        }
  return r;
}

std::string curvature_to_json(const CurvatureTensor& r) {
  const int n = r.dimension();
  nlohmann::json j;
  j["dimension"] = n;
  j["convention"] = "R(X,Y,Z,W) = g(R(X,Y)W, Z); frame orthonormal";
  nlohmann::json comps = nlohmann::json::array();
  for (int i = 0; i < n; ++i)
    for (int jj = i + 1; jj < n; ++jj)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          if (std::make_pair(i, jj) > std::make_pair(k, l)) continue;
          comps.push_back({{"index", {i, jj, k, l}}, {"value", r(i, jj, k, l)}});
        }
  j["components"] = comps;
  return j.dump(2);
}

CurvatureTensor curvature_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::MalformedInput, std::string("curvature JSON: ") + e.what());
  }
  const int n = j.at("dimension").get<int>();
  CurvatureTensor r(n);
  for (const auto& c : j.at("components")) {
    const auto idx = c.at("index").get<std::vector<int>>();
    if (idx.size() != 4) fail(ErrorKind::MalformedInput, "curvature JSON: index must have four entries");
    for (int v : idx)
      if (v < 0 || v >= n) fail(ErrorKind::IndexOutOfRange, "curvature JSON: index out of range");
    const double v = c.at("value").get<double>();
    const int a = idx[0], b = idx[1], cc = idx[2], d = idx[3];
    for (int swap_pairs = 0; swap_pairs < 2; ++swap_pairs) {
      const int p = swap_pairs ? cc : a, q = swap_pairs ? d : b;
      const int s = swap_pairs ? a : cc, t = swap_pairs ? b : d;
      r(p, q, s, t) = v;
      r(q, p, s, t) = -v;
      r(p, q, t, s) = -v;
      r(q, p, t, s) = v;
    }
  }
  r.validate();
  return r;
}

CurvatureTensor named_curvature(const std::string& name) {
  if (name == "s2") return constant_curvature(2, 1.0);
  if (name == "s3") return constant_curvature(3, 1.0);
  if (name == "h2") return constant_curvature(2, -1.0);
  if (name == "s2xr") return product_curvature(constant_curvature(2, 1.0), CurvatureTensor(1));
  if (name.rfind("flat", 0) == 0) {
    const int n = name.size() > 4 ? std::stoi(name.substr(4)) : 2;
    return CurvatureTensor(n);
  }
  fail(ErrorKind::MalformedInput, "unknown named curvature tensor '" + name + "'");
}

}  // namespace hk
