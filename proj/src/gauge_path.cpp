#include "hkgeom/gauge_path.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hkgeom/error.hpp"

namespace hk {

std::string to_string(PathKind kind) {
  switch (kind) {
    case PathKind::Group: return "group";
    case PathKind::Algebra: return "algebra";
    case PathKind::ComplexGroup: return "complex-group";
    case PathKind::ComplexAlgebra: return "complex-algebra";
  }
  return "?";
}

PathKind path_kind_from_string(const std::string& s) {
  if (s == "group") return PathKind::Group;
  if (s == "algebra") return PathKind::Algebra;
  if (s == "complex-group") return PathKind::ComplexGroup;
  if (s == "complex-algebra") return PathKind::ComplexAlgebra;
  fail(ErrorKind::MalformedInput, "unknown path kind '" + s + "'");
}

GaugePath::GaugePath(ContextPtr ctx, PathKind kind, std::vector<Matrix> values)
    : ctx_(std::move(ctx)), kind_(kind), values_(std::move(values)) {
  if (!ctx_) fail(ErrorKind::MalformedInput, "gauge path needs a context");
  if (values_.size() < 2) fail(ErrorKind::GridMismatch, "gauge path needs at least two nodes");
  const int m = ctx_->matrix_size();
  for (const auto& v : values_)
    if (v.rows() != m || v.cols() != m) fail(ErrorKind::MalformedInput, "node matrix has the wrong size");
}

GaugePath GaugePath::from_function(ContextPtr ctx, PathKind kind, int intervals,
                                   const std::function<Matrix(double)>& f) {
  if (intervals < 1) fail(ErrorKind::GridMismatch, "grid needs at least one interval");
  std::vector<Matrix> v;
  v.reserve(static_cast<std::size_t>(intervals + 1));
  for (int k = 0; k <= intervals; ++k) v.push_back(f(static_cast<double>(k) / intervals));
  return GaugePath(std::move(ctx), kind, std::move(v));
}

GaugePath GaugePath::constant(ContextPtr ctx, PathKind kind, int intervals, const Matrix& value) {
  return from_function(std::move(ctx), kind, intervals, [&](double) { return value; });
}

std::vector<Matrix> GaugePath::derivative_values() const {
  const int n = intervals();
  const double h = step();
  const auto& f = values_;
  std::vector<Matrix> d(f.size());
  if (n == 1) {
    d[0] = d[1] = (f[1] - f[0]) / h;
    return d;
  }
  if (n < 4) {
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    for (int k = 1; k < n; ++k) d[k] = (f[k + 1] - f[k - 1]) / (2.0 * h);
    d[n] = (3.0 * f[n] - 4.0 * f[n - 1] + f[n - 2]) / (2.0 * h);
    return d;
  }
  const double w = 12.0 * h;
  d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / w;
  d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / w;
  for (int k = 2; k <= n - 2; ++k) d[k] = (f[k - 2] - 8.0 * f[k - 1] + 8.0 * f[k + 1] - f[k + 2]) / w;
  d[n - 1] = (3.0 * f[n] + 10.0 * f[n - 1] - 18.0 * f[n - 2] + 6.0 * f[n - 3] - f[n - 4]) / w;
  d[n] = (25.0 * f[n] - 48.0 * f[n - 1] + 36.0 * f[n - 2] - 16.0 * f[n - 3] + 3.0 * f[n - 4]) / w;
  return d;
}

GaugePath GaugePath::derivative() const {
  if (is_group()) fail(ErrorKind::MalformedInput, "derivative() is for algebra-valued paths");
  return GaugePath(ctx_, kind_, derivative_values());
}

Matrix GaugePath::interpolate(double t) const {
  const int n = intervals();
  if (t <= 0.0) return values_.front();
  if (t >= 1.0) return values_.back();
  if (n < 3) {
    const double x = t * n;
    const int k = std::min(static_cast<int>(x), n - 1);
    const double u = x - k;
    return (1.0 - u) * values_[k] + u * values_[k + 1];
  }
  const double x = t * n;
  int k0 = static_cast<int>(std::floor(x)) - 1;
  k0 = std::clamp(k0, 0, n - 3);
  Matrix out = Matrix::Zero(values_[0].rows(), values_[0].cols());
  for (int a = 0; a < 4; ++a) {
    double w = 1.0;
    for (int b = 0; b < 4; ++b)
      if (b != a) w *= (x - (k0 + b)) / static_cast<double>(a - b);
    out += w * values_[k0 + a];
  }
  return out;
}

double GaugePath::sup_norm() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, v.norm());
  return m;
}

double GaugePath::max_distance(const GaugePath& other) const {
  require_same_grid(other);
  double m = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) m = std::max(m, (values_[k] - other.values_[k]).norm());
  return m;
}

void GaugePath::require_same_grid(const GaugePath& other) const {
  if (other.values_.size() != values_.size()) fail(ErrorKind::GridMismatch, "paths live on different grids");
  if (other.ctx_ != ctx_ && other.ctx_->name() != ctx_->name()) {
    fail(ErrorKind::ContextMismatch, "paths use different contexts");
  }
}

void GaugePath::validate(double tol) const {
  for (const auto& v : values_) {
    bool ok = true;
    switch (kind_) {
      case PathKind::Group: ok = ctx_->in_group(v, tol); break;
      case PathKind::ComplexGroup: ok = ctx_->in_complex_group(v, tol); break;
      case PathKind::Algebra: ok = ctx_->closure_residual(v) <= tol * std::max(1.0, v.norm()); break;
      case PathKind::ComplexAlgebra: ok = ctx_->complex_closure_residual(v) <= tol * std::max(1.0, v.norm()); break;
    }
    if (!ok) fail(ErrorKind::ClosureViolation, "path node leaves its declared " + to_string(kind_));
  }
}

std::string GaugePath::to_csv() const {
  const int m = ctx_->matrix_size();
  std::ostringstream out;
  out << 't';
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) out << ",re_" << r << c << ",im_" << r << c;
  out << '\n';
  char buf[64];
  for (int k = 0; k < nodes(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", t(k));
    out << buf;
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) {
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g", values_[k](r, c).real(), values_[k](r, c).imag());
        out << buf;
      }
    out << '\n';
  }
  return out.str();
}

GaugePath GaugePath::from_csv(ContextPtr ctx, PathKind kind, const std::string& text) {
  const int m = ctx->matrix_size();
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::MalformedInput, "empty path CSV");
  std::vector<Matrix> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) {
      try {
        cells.push_back(std::stod(cell));
      } catch (const std::exception&) {
        fail(ErrorKind::MalformedInput, "bad number in path CSV: '" + cell + "'");
      }
    }
    if (static_cast<int>(cells.size()) != 1 + 2 * m * m) fail(ErrorKind::MalformedInput, "path CSV row has the wrong width");
    Matrix v(m, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) v(r, c) = Complex(cells[1 + 2 * (r * m + c)], cells[2 + 2 * (r * m + c)]);
    values.push_back(std::move(v));
  }
  return GaugePath(std::move(ctx), kind, std::move(values));
}

namespace {

GaugePath combine(const GaugePath& a, const GaugePath& b, double sign) {
  a.require_same_grid(b);
  std::vector<Matrix> v(a.values());
  for (int k = 0; k < a.nodes(); ++k) v[k] += sign * b[k];
  const bool cplx = a.is_complex() || b.is_complex();
  return GaugePath(a.context(), cplx ? PathKind::ComplexAlgebra : PathKind::Algebra, std::move(v));
}

}  // namespace

GaugePath operator+(const GaugePath& a, const GaugePath& b) { return combine(a, b, 1.0); }
GaugePath operator-(const GaugePath& a, const GaugePath& b) { return combine(a, b, -1.0); }

GaugePath operator*(Complex s, const GaugePath& a) {
  std::vector<Matrix> v(a.values());
  for (auto& m : v) m *= s;
  const bool cplx = a.is_complex() || s.imag() != 0.0;
  return GaugePath(a.context(), cplx ? PathKind::ComplexAlgebra : PathKind::Algebra, std::move(v));
}

GaugePath operator*(double s, const GaugePath& a) {
  std::vector<Matrix> v(a.values());
  for (auto& m : v) m *= s;
  return GaugePath(a.context(), a.kind(), std::move(v));
}

}  // namespace hk
