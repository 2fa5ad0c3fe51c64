#include "hkgeom/ma_jet.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "hkgeom/error.hpp"

namespace hk {

namespace {

constexpr int kExact = 1 << 20;

int half_vars(int num_vars) {
  if (num_vars % 2 != 0 || num_vars == 0) fail(ErrorKind::MalformedInput, "expected 2n variables (x, y)");
  return num_vars / 2;
}

JetPolynomial potential_expansion_unchecked(const CurvatureTensor& r, int max_degree) {
  const int n = r.dimension();
  if (2 * n > kMaxJetVars) fail(ErrorKind::MalformedInput, "dimension too large for the jet engine");
  JetPolynomial rho(2 * n, max_degree);
  for (int i = 0; i < n; ++i) rho.add_term(monomial({y_var(n, i), y_var(n, i)}), kFiberQuadraticCoefficient);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          const double v = r(i, p, j, q);
          if (v != 0.0) rho.add_term(monomial({x_var(p), x_var(q), y_var(n, i), y_var(n, j)}), -v / 3.0);
        }
  return rho.pruned(1e-15 * std::max(1.0, r.max_abs()));
}

ComplexJetMatrix constant_matrix(int vars, const Eigen::MatrixXcd& m) {
  ComplexJetMatrix out{static_cast<int>(m.rows()), {}};
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.entries.push_back(ComplexJet::constant(vars, kExact, m(r, c)));
  return out;
}

// (M0 + E)^{-1} = Σ_k (-M0^{-1} E)^k M0^{-1}; E has positive valuation, so the
// series terminates once every term lies above the exact degree.
ComplexJetMatrix neumann_inverse(const ComplexJetMatrix& m, ErrorKind degenerate) {
  const int n = m.n;
  const int vars = m.entries.front().num_vars();
  Eigen::MatrixXcd m0(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m0(r, c) = m(r, c).constant_term();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m0);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(s.size() - 1) <= 1e-12 * std::max(1.0, s(0))) {
    fail(degenerate, "constant part of the matrix jet is singular");
  }
  const Eigen::MatrixXcd k = m0.inverse();

  // The inverse is exact only as far as the perturbation is.
  int cap = kExact;
  ComplexJetMatrix e{n, {}};
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      ComplexJet entry = m(r, c);
      entry.add_term(Exponents{}, -m0(r, c));
      cap = std::min(cap, entry.max_degree());
      e.entries.push_back(std::move(entry));
    }
  const ComplexJetMatrix neg_k = constant_matrix(vars, -k);
  const ComplexJetMatrix step = multiply(neg_k, e);

  ComplexJetMatrix term = constant_matrix(vars, k);
  ComplexJetMatrix sum = term;
  for (auto& entry : sum.entries) entry = entry.truncated(cap);
  for (int iter = 0; iter <= cap + 1; ++iter) {
    term = multiply(step, term);
    for (auto& entry : term.entries) entry = entry.truncated(cap);
    bool all_empty = true;
    for (std::size_t q = 0; q < sum.entries.size(); ++q) {
      sum.entries[q] += term.entries[q];
      if (!term.entries[q].empty()) all_empty = false;
    }
    if (all_empty) break;
  }
  return sum;
}

struct DerivativeTables {
  int n = 0;
  std::vector<JetPolynomial> grad;
  std::vector<JetPolynomial> hess;  // row-major 2n x 2n
};

DerivativeTables derivative_tables(const JetPolynomial& rho) {
  DerivativeTables t;
  const int vars = rho.num_vars();
  t.n = half_vars(vars);
  for (int a = 0; a < vars; ++a) t.grad.push_back(rho.derivative(a));
  for (int a = 0; a < vars; ++a)
    for (int b = 0; b < vars; ++b) t.hess.push_back(t.grad[a].derivative(b));
  return t;
}

double residual_from_tables(const JetPolynomial& rho, const DerivativeTables& t, std::span<const double> p) {
  const int n = t.n;
  const int vars = 2 * n;
  Eigen::VectorXd g(vars);
  Eigen::MatrixXd hs(vars, vars);
  for (int a = 0; a < vars; ++a) g(a) = t.grad[a].evaluate(p);
  for (int a = 0; a < vars; ++a)
    for (int b = 0; b < vars; ++b) hs(a, b) = t.hess[a * vars + b].evaluate(p);

  Eigen::VectorXcd d(n), db(n);
  Eigen::MatrixXcd h(n, n);
  for (int al = 0; al < n; ++al) {
    d(al) = 0.5 * Complex(g(al), -g(n + al));
    db(al) = std::conj(d(al));
    for (int be = 0; be < n; ++be) {
      h(al, be) = 0.25 * Complex(hs(al, be) + hs(n + al, n + be), hs(al, n + be) - hs(n + al, be));
    }
  }
  const Eigen::MatrixXcd pinv = h.transpose().inverse();
  const Complex total = (pinv * db).dot(d.conjugate());
  return total.real() - 2.0 * rho.evaluate(p);
}

}  // namespace

JetPolynomial potential_expansion(const CurvatureTensor& r, int max_degree) {
  r.validate();
  return potential_expansion_unchecked(r, max_degree);
}

ComplexJet wirtinger_holomorphic(const ComplexJet& f, int n, int alpha) {
  if (alpha < 0 || alpha >= n) fail(ErrorKind::IndexOutOfRange, "Wirtinger index out of range");
  return f.derivative(x_var(alpha)) * Complex(0.5, 0.0) + f.derivative(y_var(n, alpha)) * Complex(0.0, -0.5);
}

ComplexJet wirtinger_antiholomorphic(const ComplexJet& f, int n, int alpha) {
  if (alpha < 0 || alpha >= n) fail(ErrorKind::IndexOutOfRange, "Wirtinger index out of range");
  return f.derivative(x_var(alpha)) * Complex(0.5, 0.0) + f.derivative(y_var(n, alpha)) * Complex(0.0, 0.5);
}

ComplexJet wirtinger_holomorphic(const JetPolynomial& rho, int alpha) {
  return wirtinger_holomorphic(complexify(rho), half_vars(rho.num_vars()), alpha);
}

ComplexJet wirtinger_antiholomorphic(const JetPolynomial& rho, int alpha) {
  return wirtinger_antiholomorphic(complexify(rho), half_vars(rho.num_vars()), alpha);
}

JetPolynomial ma_residual(const JetPolynomial& rho) {
  const int n = half_vars(rho.num_vars());
  const int vars = rho.num_vars();
  const ComplexJet rc = complexify(rho);

  std::vector<ComplexJet> d, db;
  for (int al = 0; al < n; ++al) {
    d.push_back(wirtinger_holomorphic(rc, n, al));
    db.push_back(wirtinger_antiholomorphic(rc, n, al));
  }
  // Transposed complex Hessian: m(β, α) = ρ_{αβ̄}.
  ComplexJetMatrix m{n, std::vector<ComplexJet>(static_cast<std::size_t>(n * n), ComplexJet(vars, 0))};
  for (int al = 0; al < n; ++al)
    for (int be = 0; be < n; ++be) m(be, al) = wirtinger_antiholomorphic(d[al], n, be);
  const ComplexJetMatrix p = neumann_inverse(m, ErrorKind::DegenerateHessian);

  ComplexJet total(vars, kExact);
  for (int al = 0; al < n; ++al) {
    ComplexJet up(vars, kExact);
    for (int be = 0; be < n; ++be) up += p(al, be) * db[be];
    total += up * d[al];
  }
  total -= rc * Complex(2.0, 0.0);

  const double scale = std::max(1.0, rho.max_abs_coefficient());
  if (imag_part(total).max_abs_coefficient() > 1e-9 * scale * scale) {
    fail(ErrorKind::MalformedInput, "residual of a real potential came out complex");
  }
  return real_part(total).pruned(1e-14 * scale * scale);
}

double ma_residual_at(const JetPolynomial& rho, std::span<const double> point) {
  if (static_cast<int>(point.size()) != rho.num_vars()) fail(ErrorKind::MalformedInput, "point has the wrong size");
  return residual_from_tables(rho, derivative_tables(rho), point);
}

double ma_residual_sup(const JetPolynomial& rho, double eps, int samples, std::uint64_t seed) {
  const DerivativeTables t = derivative_tables(rho);
  const int n = t.n;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> p(static_cast<std::size_t>(2 * n));
  double sup = 0.0;
  for (int s = 0; s < samples; ++s) {
    for (int al = 0; al < n; ++al) {
      // Every other sample sits on the distinguished boundary of the polydisk.
      const double radius = (s % 2 == 0) ? 1.0 : std::sqrt(unit(rng));
      const double theta = 2.0 * M_PI * unit(rng);
      p[al] = eps * radius * std::cos(theta);
      p[n + al] = eps * radius * std::sin(theta);
    }
    sup = std::max(sup, std::abs(residual_from_tables(rho, t, p)));
  }
  return sup;
}

ScalingFit ma_scaling_fit(const JetPolynomial& rho, const std::vector<double>& eps, int samples, std::uint64_t seed) {
  ScalingFit fit;
  fit.eps = eps;
  for (double e : eps) fit.sup.push_back(ma_residual_sup(rho, e, samples, seed));
  const std::size_t m = eps.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const double lx = std::log(eps[k]);
    const double ly = std::log(std::max(fit.sup[k], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = m * sxx - sx * sx;
  fit.exponent = denom == 0.0 ? 0.0 : (m * sxy - sx * sy) / denom;
  return fit;
}

RealJetMatrix inverse_jet(const RealJetMatrix& m) {
  if (m.n <= 0 || static_cast<int>(m.entries.size()) != m.n * m.n) {
    fail(ErrorKind::MalformedInput, "matrix jet has the wrong shape");
  }
  const int vars = m.entries.front().num_vars();
  for (int r = 0; r < m.n; ++r)
    for (int c = 0; c < m.n; ++c) {
      const auto& entry = m(r, c);
      for (const auto& [e, v] : entry.terms()) {
        const int deg = total_degree(e);
        if (deg == 0 && r == c && v == 1.0) continue;
        if (deg != 2) fail(ErrorKind::MalformedInput, "expected identity plus a homogeneous quadratic");
      }
      if (r == c && entry.constant_term() != 1.0) fail(ErrorKind::MalformedInput, "diagonal must start with 1");
    }
  ComplexJetMatrix cm{m.n, {}};
  for (const auto& e : m.entries) cm.entries.push_back(complexify(e));
  const ComplexJetMatrix inv = neumann_inverse(cm, ErrorKind::MalformedInput);
  RealJetMatrix out{m.n, {}};
  for (const auto& e : inv.entries) out.entries.push_back(real_part(e));
  (void)vars;
  return out;
}

double QuarticCoefficients::max_abs_a() const {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

QuarticCoefficients make_quartic(int n, const std::vector<double>& a) {
  QuarticCoefficients q;
  q.n = n;
  const std::size_t size = static_cast<std::size_t>(n * n * n * n);
  if (a.size() != size) fail(ErrorKind::MalformedInput, "quartic coefficient array has the wrong size");
  q.a = a;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const bool ordered = i <= j && j <= k && k <= l;
          if (!ordered && a[q.idx(i, j, k, l)] != 0.0) {
            fail(ErrorKind::UnorderedIndices, "quartic coefficients are stored on ordered quadruples only");
          }
        }
  q.b.assign(size, 0.0);
  q.c.assign(size, 0.0);
  for (int al = 0; al < n; ++al)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          q.b[q.idx(al, i, j, k)] = q.A(al, i, j, k) + q.A(i, al, j, k) + q.A(i, j, al, k) + q.A(i, j, k, al);
  for (int al = 0; al < n; ++al)
    for (int be = 0; be < n; ++be)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          q.c[q.idx(al, be, k, l)] = q.B(be, al, k, l) + q.B(be, k, al, l) + q.B(be, k, l, al);
  q.curvature_residual.assign(size, 0.0);
  q.arrangement_sum.assign(size, 0.0);
  return q;
}

QuarticCoefficients random_quartic(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> a(static_cast<std::size_t>(n * n * n * n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k)
        for (int l = k; l < n; ++l) a[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)] = normal(rng);
  return make_quartic(n, a);
}

std::vector<std::array<int, 4>> distinct_arrangements(int i, int j, int k, int l) {
  std::array<int, 4> v{i, j, k, l};
  std::sort(v.begin(), v.end());
  std::vector<std::array<int, 4>> out;
  do {
    out.push_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

namespace {

struct FiberSystem {
  std::vector<std::array<int, 4>> quads;
  std::vector<double> r0;
  Eigen::MatrixXd lin;
};

Exponents fiber_monomial(int n, const std::array<int, 4>& q) {
  return monomial({y_var(n, q[0]), y_var(n, q[1]), y_var(n, q[2]), y_var(n, q[3])});
}

std::vector<double> fiber_quartic_part(const JetPolynomial& residual, int n, const std::vector<std::array<int, 4>>& quads) {
  std::vector<double> out;
  for (const auto& q : quads) out.push_back(residual.coefficient(fiber_monomial(n, q)));
  return out;
}

FiberSystem fiber_system(const CurvatureTensor& r) {
  const int n = r.dimension();
  FiberSystem sys;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k)
        for (int l = k; l < n; ++l) sys.quads.push_back({i, j, k, l});
  const JetPolynomial base = potential_expansion_unchecked(r, 4);
  sys.r0 = fiber_quartic_part(ma_residual(base), n, sys.quads);
  const int m = static_cast<int>(sys.quads.size());
  sys.lin = Eigen::MatrixXd::Zero(m, m);
  for (int c = 0; c < m; ++c) {
    JetPolynomial trial = base;
    trial.add_term(fiber_monomial(n, sys.quads[c]), 1.0);
    const auto col = fiber_quartic_part(ma_residual(trial), n, sys.quads);
    for (int rr = 0; rr < m; ++rr) sys.lin(rr, c) = col[rr] - sys.r0[rr];
  }
  return sys;
}

}  // namespace

QuarticCoefficients series_solve_quartic(const CurvatureTensor& r) {
  r.validate();
  const int n = r.dimension();
  const FiberSystem sys = fiber_system(r);
  const int m = static_cast<int>(sys.quads.size());
  Eigen::VectorXd rhs(m);
  for (int k = 0; k < m; ++k) rhs(k) = -sys.r0[k];
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sys.lin);
  qr.setThreshold(1e-10);
  if (qr.rank() < m) fail(ErrorKind::SingularSystem, "quartic matching system is singular");
  const Eigen::VectorXd sol = qr.solve(rhs);

  std::vector<double> a(static_cast<std::size_t>(n * n * n * n), 0.0);
  for (int k = 0; k < m; ++k) {
    const auto& q = sys.quads[k];
    a[static_cast<std::size_t>(((q[0] * n + q[1]) * n + q[2]) * n + q[3])] = sol(k);
  }
  QuarticCoefficients out = make_quartic(n, a);
  for (int k = 0; k < m; ++k) {
    const auto& q = sys.quads[k];
    double s = 0.0;
    for (const auto& p : distinct_arrangements(q[0], q[1], q[2], q[3])) {
      s += r(p[0], p[3], p[1], p[2]) + r(p[0], p[2], p[1], p[3]);
    }
    const std::size_t at = out.idx(q[0], q[1], q[2], q[3]);
    out.curvature_residual[at] = sys.r0[k];
    out.arrangement_sum[at] = s;
  }
  return out;
}

JetPolynomial series_solution(const CurvatureTensor& r, const QuarticCoefficients& q, int max_degree) {
  JetPolynomial rho = potential_expansion(r, max_degree);
  const int n = r.dimension();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k)
        for (int l = k; l < n; ++l) rho.add_term(fiber_monomial(n, {i, j, k, l}), q.A(i, j, k, l));
  return rho;
}

double arrangement_identity(const QuarticCoefficients& q, int i, int j, int k, int l) {
  const int n = q.n;
  for (int v : {i, j, k, l})
    if (v < 0 || v >= n) fail(ErrorKind::IndexOutOfRange, "index out of range");
  if (!(i <= j && j <= k && k <= l)) fail(ErrorKind::UnorderedIndices, "indices must satisfy i <= j <= k <= l");
  double sum = 0.0;
  for (const auto& p : distinct_arrangements(i, j, k, l)) {
    sum += q.B(p[0], p[1], p[2], p[3]) - 0.5 * q.C(p[3], p[2], p[0], p[1]);
  }
  return sum + 2.0 * q.A(i, j, k, l);
}

std::string jet_to_text(const JetPolynomial& j) {
  std::ostringstream out;
  out << "# num_vars " << j.num_vars() << " max_degree " << j.max_degree() << '\n';
  char buf[64];
  for (const auto& [e, c] : j.terms()) {
    for (int k = 0; k < j.num_vars(); ++k) out << static_cast<int>(e[k]) << ' ';
    std::snprintf(buf, sizeof buf, "%.17g", c);
    out << buf << '\n';
  }
  return out.str();
}

std::string jet_to_json(const JetPolynomial& j) {
  nlohmann::json out;
  out["num_vars"] = j.num_vars();
  out["max_degree"] = j.max_degree();
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : j.terms()) {
    std::vector<int> ex(e.begin(), e.begin() + j.num_vars());
    terms.push_back({{"exponents", ex}, {"coefficient", c}});
  }
  out["terms"] = terms;
  return out.dump(2);
}

JetPolynomial jet_from_json(const std::string& text) {
  try {
    const auto in = nlohmann::json::parse(text);
    JetPolynomial j(in.at("num_vars").get<int>(), in.at("max_degree").get<int>());
    for (const auto& t : in.at("terms")) {
      const auto ex = t.at("exponents").get<std::vector<int>>();
      if (static_cast<int>(ex.size()) != j.num_vars()) fail(ErrorKind::MalformedInput, "exponent length mismatch");
      Exponents e{};
      for (std::size_t k = 0; k < ex.size(); ++k) {
        if (ex[k] < 0 || ex[k] > 255) fail(ErrorKind::MalformedInput, "exponent out of range");
        e[k] = static_cast<std::uint8_t>(ex[k]);
      }
      j.add_term(e, t.at("coefficient").get<double>());
    }
    return j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::MalformedInput, std::string("jet JSON: ") + e.what());
  }
}

}  // namespace hk
