#include "hkgeom/kahler_curvature.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hkgeom/error.hpp"
#include "hkgeom/ma_jet.hpp"

namespace hk {

double KahlerCurvatureAtZero::max_imag() const {
  double m = 0.0;
  for (const auto& v : k) m = std::max(m, std::abs(v.imag()));
  return m;
}

double KahlerCurvatureAtZero::hermitian_defect() const {
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) m = std::max(m, std::abs((*this)(i, j, a, b) - std::conj((*this)(j, i, b, a))));
  return m;
}

double KahlerCurvatureAtZero::max_abs_difference(const KahlerCurvatureAtZero& other) const {
  if (other.n != n) fail(ErrorKind::MalformedInput, "dimension mismatch");
  double m = 0.0;
  for (std::size_t q = 0; q < k.size(); ++q) m = std::max(m, std::abs(k[q] - other.k[q]));
  return m;
}

KahlerCurvatureAtZero k_components_at_zero(const CurvatureTensor& r) {
  r.validate();
  KahlerCurvatureAtZero out;
  out.n = r.dimension();
  const int n = out.n;
  out.k.assign(static_cast<std::size_t>(n * n * n * n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out.at(i, j, a, b) = (r(i, j, a, b) + r(i, b, a, j)) / 6.0;
  out.source = r;
  return out;
}

KahlerCurvatureAtZero k_oracle_from_jet(const JetPolynomial& rho) {
  const int vars = rho.num_vars();
  if (vars % 2 != 0 || vars == 0) fail(ErrorKind::MalformedInput, "expected 2n variables (x, y)");
  const int n = vars / 2;
  if (rho.max_degree() < 4) fail(ErrorKind::MalformedInput, "curvature needs a jet exact through degree 4");
  const ComplexJet rc = complexify(rho);

  std::vector<ComplexJet> d1, d1b;  // ρ_i, ρ_ī
  for (int i = 0; i < n; ++i) {
    d1.push_back(wirtinger_holomorphic(rc, n, i));
    d1b.push_back(wirtinger_antiholomorphic(rc, n, i));
  }
  auto at = [n](int a, int b) { return static_cast<std::size_t>(a * n + b); };
  std::vector<ComplexJet> d_ijb;  // ρ_{i j̄}
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d_ijb.push_back(wirtinger_antiholomorphic(d1[i], n, j));

  Eigen::MatrixXcd h0(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) h0(a, b) = d_ijb[at(a, b)].constant_term();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h0);
  const auto& s = svd.singularValues();
  if (s(n - 1) <= 1e-12 * std::max(1.0, s(0))) fail(ErrorKind::DegenerateHessian, "complex Hessian is singular at 0");
  // Σ_β ρ^{αβ̄} ρ_{γβ̄} = δ_αγ.
  const Eigen::MatrixXcd up = h0.transpose().inverse();

  // Third derivatives at 0: ρ_{i k μ̄} and ρ_{j̄ l̄ ν}.
  std::vector<std::complex<double>> hol2_anti(static_cast<std::size_t>(n * n * n));
  std::vector<std::complex<double>> anti2_hol(static_cast<std::size_t>(n * n * n));
  for (int i = 0; i < n; ++i)
    for (int kk = 0; kk < n; ++kk) {
      const ComplexJet hh = wirtinger_holomorphic(d1[i], n, kk);
      const ComplexJet aa = wirtinger_antiholomorphic(d1b[i], n, kk);
      for (int m = 0; m < n; ++m) {
        hol2_anti[static_cast<std::size_t>((i * n + kk) * n + m)] = wirtinger_antiholomorphic(hh, n, m).constant_term();
        anti2_hol[static_cast<std::size_t>((i * n + kk) * n + m)] = wirtinger_holomorphic(aa, n, m).constant_term();
      }
    }

  KahlerCurvatureAtZero out;
  out.n = n;
  out.k.assign(static_cast<std::size_t>(n * n * n * n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int kk = 0; kk < n; ++kk) {
        const ComplexJet third = wirtinger_holomorphic(d_ijb[at(i, j)], n, kk);
        for (int l = 0; l < n; ++l) {
          std::complex<double> v = wirtinger_antiholomorphic(third, n, l).constant_term();
          for (int nu = 0; nu < n; ++nu)
            for (int mu = 0; mu < n; ++mu) {
              v -= up(nu, mu) * hol2_anti[static_cast<std::size_t>((i * n + kk) * n + mu)] *
                   anti2_hol[static_cast<std::size_t>((j * n + l) * n + nu)];
            }
          out.at(i, j, kk, l) = v;
        }
      }
  return out;
}

std::string to_string(PlaneType p) {
  switch (p) {
    case PlaneType::XY: return "xy";
    case PlaneType::XX: return "xx";
    case PlaneType::YY: return "yy";
    case PlaneType::Holomorphic: return "holomorphic";
  }
  return "?";
}

PlaneType plane_type_from_string(const std::string& s) {
  if (s == "xy") return PlaneType::XY;
  if (s == "xx") return PlaneType::XX;
  if (s == "yy") return PlaneType::YY;
  if (s == "holomorphic") return PlaneType::Holomorphic;
  fail(ErrorKind::MalformedInput, "unknown plane type '" + s + "'");
}

double sectional_plane(const KahlerCurvatureAtZero& k, PlaneType plane, int i, int j) {
  const int n = k.n;
  if (plane == PlaneType::Holomorphic) j = i;
  if (i < 0 || j < 0 || i >= n || j >= n) fail(ErrorKind::IndexOutOfRange, "plane index out of range");
  if (plane != PlaneType::Holomorphic && i == j) fail(ErrorKind::EqualIndices, "plane needs two distinct indices");
  const std::complex<double> a = k(i, j, i, j);
  const std::complex<double> b = k(i, j, j, i);
  switch (plane) {
    case PlaneType::XY:
    case PlaneType::Holomorphic:
      return -(a + 2.0 * b + std::conj(a)).real() + 0.0;
    case PlaneType::XX:
    case PlaneType::YY:
      return (a - 2.0 * b + std::conj(a)).real();
  }
  return 0.0;
}

double sectional_plane(const CurvatureTensor& r, PlaneType plane, int i, int j) {
  return sectional_plane(k_components_at_zero(r), plane, i, j);
}

NegativePlaneWitness find_negative_plane(const CurvatureTensor& r) {
  r.validate();
  NegativePlaneWitness w;
  if (r.is_zero()) return w;
  const int n = r.dimension();
  double best = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (r(i, j, i, j) > best) {
        best = r(i, j, i, j);
        w.i = i;
        w.j = j;
      }
  if (w.i < 0) return w;
  w.flag = true;
  w.value = sectional_plane(r, PlaneType::XY, w.i, w.j);
  return w;
}

std::string kahler_table_csv(const CurvatureTensor& r) {
  const KahlerCurvatureAtZero closed = k_components_at_zero(r);
  const KahlerCurvatureAtZero oracle = k_oracle_from_jet(potential_expansion(r));
  const int n = r.dimension();
  std::ostringstream out;
  out << "i,j,plane,closed_form,oracle,abs_error\n";
  char buf[160];
  auto row = [&](int i, int j, PlaneType p) {
    const double c = sectional_plane(closed, p, i, j);
    const double o = sectional_plane(oracle, p, i, j);
    std::snprintf(buf, sizeof buf, "%d,%d,%s,%.17g,%.17g,%.3e\n", i, j, to_string(p).c_str(), c, o, std::abs(c - o));
    out << buf;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      row(i, j, PlaneType::XY);
      if (i < j) {
        row(i, j, PlaneType::XX);
        row(i, j, PlaneType::YY);
      }
    }
  for (int i = 0; i < n; ++i) row(i, i, PlaneType::Holomorphic);
  return out.str();
}

}  // namespace hk
