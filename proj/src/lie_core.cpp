#include "hkgeom/lie_core.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <Eigen/QR>

#include "hkgeom/error.hpp"

namespace hk {

namespace {

constexpr Complex kI{0.0, 1.0};

Eigen::VectorXd real_vec(const Matrix& x) {
  const Eigen::Index m2 = x.size();
  Eigen::VectorXd v(2 * m2);
  Eigen::Index k = 0;
  for (Eigen::Index r = 0; r < x.rows(); ++r)
    for (Eigen::Index c = 0; c < x.cols(); ++c, ++k) {
      v[k] = x(r, c).real();
      v[m2 + k] = x(r, c).imag();
    }
  return v;
}

RealMatrix pseudo_inverse(const RealMatrix& b) {
  return b.completeOrthogonalDecomposition().pseudoInverse();
}

void require_same_context(const ContextPtr& a, const ContextPtr& b) {
  if (!a || !b || a.get() != b.get()) {
    fail(ErrorKind::ContextMismatch, "elements belong to different Lie algebra contexts");
  }
}

}  // namespace

LieAlgebraContext::LieAlgebraContext(std::string name, std::vector<Matrix> basis,
                                     RealMatrix inner_product, std::vector<bool> subalgebra_mask,
                                     GroupModel model, std::optional<Matrix> h_marker)
    : name_(std::move(name)),
      basis_(std::move(basis)),
      gram_(std::move(inner_product)),
      model_(model),
      h_marker_(std::move(h_marker)) {
  if (basis_.empty()) fail(ErrorKind::MalformedInput, "empty basis");
  const Eigen::Index m = basis_.front().rows();
  for (const auto& e : basis_) {
    if (e.rows() != m || e.cols() != m) fail(ErrorKind::MalformedInput, "basis matrices must be square and of equal size");
  }
  const int d = dimension();
  if (gram_.rows() != d || gram_.cols() != d) fail(ErrorKind::MalformedInput, "inner product matrix has wrong shape");
  if (!subalgebra_mask.empty() && static_cast<int>(subalgebra_mask.size()) != d) {
    fail(ErrorKind::MalformedInput, "subalgebra mask has wrong length");
  }
  bool any_h = false;
  for (bool b : subalgebra_mask) any_h = any_h || b;
  if (any_h) {
    for (int k = 0; k < d; ++k) (subalgebra_mask[k] ? subalgebra_ : complement_).push_back(k);
  }

  RealMatrix real_basis(2 * m * m, d);
  RealMatrix complex_basis(2 * m * m, 2 * d);
  for (int k = 0; k < d; ++k) {
    real_basis.col(k) = real_vec(basis_[k]);
    complex_basis.col(k) = real_vec(basis_[k]);
    complex_basis.col(d + k) = real_vec(kI * basis_[k]);
  }
  Eigen::ColPivHouseholderQR<RealMatrix> qr(real_basis);
  if (qr.rank() != d) fail(ErrorKind::MalformedInput, "basis matrices are linearly dependent");
  real_pinv_ = pseudo_inverse(real_basis);
  complex_pinv_ = pseudo_inverse(complex_basis);
  validate();
}

void LieAlgebraContext::validate() const {
  const int d = dimension();
  if ((gram_ - gram_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    fail(ErrorKind::MalformedInput, "inner product is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(gram_);
  if (eig.eigenvalues().minCoeff() <= 0.0) fail(ErrorKind::MalformedInput, "inner product is not positive-definite");

  std::vector<std::vector<Matrix>> brackets(d, std::vector<Matrix>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      brackets[i][j] = commutator(basis_[i], basis_[j]);
      if (closure_residual(brackets[i][j]) > tolerance()) {
        fail(ErrorKind::ClosureViolation, "bracket of basis elements leaves the span");
      }
    }
  for (int z = 0; z < d; ++z)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const double defect = inner(brackets[z][i], basis_[j]) + inner(basis_[i], brackets[z][j]);
        if (std::abs(defect) > 1e-10) fail(ErrorKind::MalformedInput, "inner product is not Ad-invariant");
      }
  if (!has_split()) return;
  for (int h : subalgebra_)
    for (int m : complement_)
      if (std::abs(gram_(h, m)) > 1e-12) fail(ErrorKind::MalformedInput, "split is not orthogonal");
  for (int a : subalgebra_) {
    for (int b : subalgebra_) {
      if (project_m(brackets[a][b]).norm() > tolerance()) fail(ErrorKind::MalformedInput, "h is not a subalgebra");
    }
    for (int m : complement_) {
      if (project_h(brackets[a][m]).norm() > tolerance()) fail(ErrorKind::MalformedInput, "split is not reductive");
    }
  }
}

Eigen::VectorXd LieAlgebraContext::coordinates(const Matrix& x) const {
  return real_pinv_ * real_vec(x);
}

Eigen::VectorXcd LieAlgebraContext::complex_coordinates(const Matrix& z) const {
  const Eigen::VectorXd ri = complex_pinv_ * real_vec(z);
  const int d = dimension();
  Eigen::VectorXcd c(d);
  for (int k = 0; k < d; ++k) c[k] = Complex(ri[k], ri[d + k]);
  return c;
}

Matrix LieAlgebraContext::from_coordinates(const Eigen::VectorXd& c) const {
  Matrix out = Matrix::Zero(matrix_size(), matrix_size());
  for (int k = 0; k < dimension(); ++k) out += c[k] * basis_[k];
  return out;
}

Matrix LieAlgebraContext::from_complex_coordinates(const Eigen::VectorXcd& c) const {
  Matrix out = Matrix::Zero(matrix_size(), matrix_size());
  for (int k = 0; k < dimension(); ++k) out += c[k] * basis_[k];
  return out;
}

double LieAlgebraContext::closure_residual(const Matrix& x) const {
  return (x - from_coordinates(coordinates(x))).norm();
}

double LieAlgebraContext::complex_closure_residual(const Matrix& z) const {
  return (z - from_complex_coordinates(complex_coordinates(z))).norm();
}

double LieAlgebraContext::inner(const Matrix& x, const Matrix& y) const {
  return coordinates(x).dot(gram_ * coordinates(y));
}

double LieAlgebraContext::norm(const Matrix& x) const { return std::sqrt(std::max(0.0, inner(x, x))); }

Matrix LieAlgebraContext::project_h(const Matrix& x) const {
  if (!has_split()) fail(ErrorKind::NoSplitConfigured, "context '" + name_ + "' has no reductive split");
  Eigen::VectorXcd c = complex_coordinates(x);
  for (int k : complement_) c[k] = 0.0;
  return from_complex_coordinates(c);
}

Matrix LieAlgebraContext::project_m(const Matrix& x) const {
  if (!has_split()) fail(ErrorKind::NoSplitConfigured, "context '" + name_ + "' has no reductive split");
  Eigen::VectorXcd c = complex_coordinates(x);
  for (int k : subalgebra_) c[k] = 0.0;
  return from_complex_coordinates(c);
}

namespace {

bool is_diagonal(const Matrix& g, double tol) {
  for (Eigen::Index r = 0; r < g.rows(); ++r)
    for (Eigen::Index c = 0; c < g.cols(); ++c)
      if (r != c && std::abs(g(r, c)) > tol) return false;
  return true;
}

bool is_unitary(const Matrix& g, double tol) {
  return (g * g.adjoint() - Matrix::Identity(g.rows(), g.cols())).norm() <= tol;
}

Matrix unit_determinant(const Matrix& g) {
  const Complex det = g.determinant();
  const double n = static_cast<double>(g.rows());
  return g / std::pow(det, 1.0 / n);
}

}  // namespace

bool LieAlgebraContext::in_group(const Matrix& g, double tol) const {
  if (g.rows() != matrix_size() || g.cols() != matrix_size()) return false;
  switch (model_) {
    case GroupModel::SpecialUnitary:
      return is_unitary(g, tol) && std::abs(g.determinant() - 1.0) <= tol;
    case GroupModel::SpecialOrthogonal:
      return g.imag().norm() <= tol && is_unitary(g, tol) && std::abs(g.determinant() - 1.0) <= tol;
    case GroupModel::Torus:
      return is_diagonal(g, tol) && is_unitary(g, tol);
    case GroupModel::Unitary:
      return is_unitary(g, tol);
  }
  return false;
}

bool LieAlgebraContext::in_complex_group(const Matrix& g, double tol) const {
  if (g.rows() != matrix_size() || g.cols() != matrix_size()) return false;
  switch (model_) {
    case GroupModel::SpecialUnitary:
      return std::abs(g.determinant() - 1.0) <= tol;
    case GroupModel::SpecialOrthogonal:
      return (g.transpose() * g - Matrix::Identity(g.rows(), g.cols())).norm() <= tol &&
             std::abs(g.determinant() - 1.0) <= tol;
    case GroupModel::Torus:
      return is_diagonal(g, tol) && std::abs(g.determinant()) > tol;
    case GroupModel::Unitary:
      return std::abs(g.determinant()) > tol;
  }
  return false;
}

Matrix LieAlgebraContext::reproject_group(const Matrix& g) const {
  switch (model_) {
    case GroupModel::SpecialUnitary:
      return unit_determinant(polar_unitary(g));
    case GroupModel::SpecialOrthogonal: {
      Eigen::JacobiSVD<RealMatrix> svd(g.real(), Eigen::ComputeFullU | Eigen::ComputeFullV);
      return (svd.matrixU() * svd.matrixV().transpose()).cast<Complex>();
    }
    case GroupModel::Torus: {
      Matrix out = Matrix::Zero(g.rows(), g.cols());
      for (Eigen::Index k = 0; k < g.rows(); ++k) out(k, k) = g(k, k) / std::abs(g(k, k));
      return out;
    }
    case GroupModel::Unitary:
      return polar_unitary(g);
  }
  return g;
}

Matrix LieAlgebraContext::reproject_complex_group(const Matrix& g) const {
  switch (model_) {
    case GroupModel::SpecialUnitary:
    case GroupModel::SpecialOrthogonal:
      return unit_determinant(g);
    case GroupModel::Torus: {
      Matrix out = Matrix::Zero(g.rows(), g.cols());
      for (Eigen::Index k = 0; k < g.rows(); ++k) out(k, k) = g(k, k);
      return out;
    }
    case GroupModel::Unitary:
      return g;
  }
  return g;
}

bool LieAlgebraContext::in_complex_subgroup(const Matrix& z, double tol) const {
  if (!has_split() || !h_marker_) {
    fail(ErrorKind::NoSplitConfigured, "context '" + name_ + "' has no H^C membership predicate");
  }
  return commutator(z, *h_marker_).norm() <= tol * std::max(1.0, z.norm());
}

// ---------------------------------------------------------------------------
// Built-in contexts

namespace {

Matrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  Matrix out(n, n);
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (const auto& v : row) out(r, c++) = v;
    ++r;
  }
  return out;
}

std::vector<Matrix> su2_basis() {
  const Matrix s1 = mat({{0, 1}, {1, 0}});
  const Matrix s2 = mat({{0, -kI}, {kI, 0}});
  const Matrix s3 = mat({{1, 0}, {0, -1}});
  return {-0.5 * kI * s1, -0.5 * kI * s2, -0.5 * kI * s3};
}

std::vector<Matrix> su3_basis() {
  std::vector<Matrix> lambda(8, Matrix::Zero(3, 3));
  lambda[0](0, 1) = lambda[0](1, 0) = 1.0;
  lambda[1](0, 1) = -kI;
  lambda[1](1, 0) = kI;
  lambda[2](0, 0) = 1.0;
  lambda[2](1, 1) = -1.0;
  lambda[3](0, 2) = lambda[3](2, 0) = 1.0;
  lambda[4](0, 2) = -kI;
  lambda[4](2, 0) = kI;
  lambda[5](1, 2) = lambda[5](2, 1) = 1.0;
  lambda[6](1, 2) = -kI;
  lambda[6](2, 1) = kI;
  lambda[7](0, 0) = lambda[7](1, 1) = 1.0 / std::sqrt(3.0);
  lambda[7](2, 2) = -2.0 / std::sqrt(3.0);
  for (auto& l : lambda) l = -0.5 * kI * l;
  return lambda;
}

std::vector<Matrix> so_basis(int n) {
  std::vector<Matrix> out;
  if (n == 3) {
    // L_x, L_y, L_z with [L_x, L_y] = L_z
    out.push_back(mat({{0, 0, 0}, {0, 0, -1}, {0, 1, 0}}));
    out.push_back(mat({{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}}));
    out.push_back(mat({{0, -1, 0}, {1, 0, 0}, {0, 0, 0}}));
    return out;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = 1.0;
      e(j, i) = -1.0;
      out.push_back(e);
    }
  return out;
}

std::vector<Matrix> torus_basis(int n) {
  std::vector<Matrix> out;
  for (int k = 0; k < n; ++k) {
    Matrix e = Matrix::Zero(n, n);
    e(k, k) = kI;
    out.push_back(e);
  }
  return out;
}

// Gram matrix of <X, Y> = -c Re tr(XY), c fixed by normalizing the first basis element.
RealMatrix trace_form(const std::vector<Matrix>& basis) {
  const double c = -1.0 / (basis.front() * basis.front()).trace().real();
  const int d = static_cast<int>(basis.size());
  RealMatrix gram(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gram(i, j) = -c * (basis[i] * basis[j]).trace().real();
  return gram;
}

ContextPtr make_context(std::string name, std::vector<Matrix> basis, std::vector<bool> mask,
                        GroupModel model, std::optional<Matrix> marker = std::nullopt) {
  RealMatrix gram = trace_form(basis);
  return std::make_shared<const LieAlgebraContext>(std::move(name), std::move(basis), std::move(gram),
                                                   std::move(mask), model, std::move(marker));
}

}  // namespace

std::vector<std::string> builtin_context_names() {
  return {"su2", "su3", "so3", "so4", "t1", "t2", "su2_u1", "su3_u2"};
}

ContextPtr builtin_context(std::string_view name) {
  if (name == "su2") return make_context("su2", su2_basis(), {}, GroupModel::SpecialUnitary);
  if (name == "su2_u1") {
    auto b = su2_basis();
    Matrix marker = b[2];
    return make_context("su2_u1", std::move(b), {false, false, true}, GroupModel::SpecialUnitary, marker);
  }
  if (name == "su3") return make_context("su3", su3_basis(), {}, GroupModel::SpecialUnitary);
  if (name == "su3_u2") {
    auto b = su3_basis();
    Matrix marker = b[7];
    return make_context("su3_u2", std::move(b), {true, true, true, false, false, false, false, true},
                        GroupModel::SpecialUnitary, marker);
  }
  if (name == "so3") return make_context("so3", so_basis(3), {}, GroupModel::SpecialOrthogonal);
  if (name == "so4") return make_context("so4", so_basis(4), {}, GroupModel::SpecialOrthogonal);
  if (name == "t1") return make_context("t1", torus_basis(1), {}, GroupModel::Torus);
  if (name == "t2") return make_context("t2", torus_basis(2), {}, GroupModel::Torus);
  fail(ErrorKind::MalformedInput, "unknown built-in context '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Structure-constants text format

namespace {

GroupModel parse_model(const std::string& s) {
  if (s == "special_unitary") return GroupModel::SpecialUnitary;
  if (s == "special_orthogonal") return GroupModel::SpecialOrthogonal;
  if (s == "torus") return GroupModel::Torus;
  if (s == "unitary") return GroupModel::Unitary;
  fail(ErrorKind::MalformedInput, "unknown group model '" + s + "'");
}

std::string model_name(GroupModel m) {
  switch (m) {
    case GroupModel::SpecialUnitary: return "special_unitary";
    case GroupModel::SpecialOrthogonal: return "special_orthogonal";
    case GroupModel::Torus: return "torus";
    case GroupModel::Unitary: return "unitary";
  }
  return "unitary";
}

}  // namespace

ContextPtr parse_structure_text(const std::string& text) {
  std::istringstream lines(text);
  std::ostringstream stripped;
  std::string line;
  while (std::getline(lines, line)) {
    const auto hash = line.find('#');
    stripped << (hash == std::string::npos ? line : line.substr(0, hash)) << '\n';
  }
  std::istringstream in(stripped.str());

  std::string name = "custom";
  std::string model = "unitary";
  int d = -1;
  int m = -1;
  std::vector<Matrix> basis;
  RealMatrix gram;
  std::vector<bool> mask;
  std::optional<Matrix> marker;

  auto need = [&](bool ok, const std::string& what) {
    if (!ok) fail(ErrorKind::MalformedInput, "structure file: " + what);
  };
  std::string key;
  while (in >> key) {
    if (key == "name") {
      need(static_cast<bool>(in >> name), "missing name");
    } else if (key == "group") {
      need(static_cast<bool>(in >> model), "missing group model");
    } else if (key == "dimension") {
      need(static_cast<bool>(in >> d) && d > 0, "bad dimension");
    } else if (key == "matrix_size") {
      need(static_cast<bool>(in >> m) && m > 0, "bad matrix_size");
    } else if (key == "basis") {
      need(d > 0 && m > 0, "dimension and matrix_size must precede basis");
      for (int k = 0; k < d; ++k) {
        Matrix e(m, m);
        for (int r = 0; r < m; ++r)
          for (int c = 0; c < m; ++c) {
            double re = 0.0, im = 0.0;
            need(static_cast<bool>(in >> re >> im), "truncated basis matrix");
            e(r, c) = Complex(re, im);
          }
        basis.push_back(e);
      }
    } else if (key == "inner_product") {
      need(d > 0, "dimension must precede inner_product");
      gram.resize(d, d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) need(static_cast<bool>(in >> gram(r, c)), "truncated inner product");
    } else if (key == "h_mask") {
      need(d > 0, "dimension must precede h_mask");
      for (int k = 0; k < d; ++k) {
        int bit = 0;
        need(static_cast<bool>(in >> bit), "truncated h_mask");
        mask.push_back(bit != 0);
      }
    } else if (key == "h_marker") {
      need(m > 0, "matrix_size must precede h_marker");
      Matrix z(m, m);
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
          double re = 0.0, im = 0.0;
          need(static_cast<bool>(in >> re >> im), "truncated h_marker");
          z(r, c) = Complex(re, im);
        }
      marker = z;
    } else {
      fail(ErrorKind::MalformedInput, "structure file: unknown keyword '" + key + "'");
    }
  }
  need(static_cast<int>(basis.size()) == d && d > 0, "basis missing");
  if (gram.size() == 0) gram = trace_form(basis);
  return std::make_shared<const LieAlgebraContext>(name, std::move(basis), std::move(gram), std::move(mask),
                                                   parse_model(model), std::move(marker));
}

ContextPtr load_structure_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorKind::MalformedInput, "cannot open structure file '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_structure_text(buf.str());
}

std::string format_structure_text(const LieAlgebraContext& ctx) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "name " << ctx.name() << "\n";
  out << "group " << model_name(ctx.group_model()) << "\n";
  out << "dimension " << ctx.dimension() << "\n";
  out << "matrix_size " << ctx.matrix_size() << "\n";
  out << "basis\n";
  for (const auto& e : ctx.basis()) {
    for (Eigen::Index r = 0; r < e.rows(); ++r) {
      for (Eigen::Index c = 0; c < e.cols(); ++c) out << e(r, c).real() << ' ' << e(r, c).imag() << "  ";
      out << "\n";
    }
  }
  out << "inner_product\n";
  for (int r = 0; r < ctx.dimension(); ++r) {
    for (int c = 0; c < ctx.dimension(); ++c) out << ctx.inner_product_matrix()(r, c) << ' ';
    out << "\n";
  }
  if (ctx.has_split()) {
    out << "h_mask\n";
    std::vector<int> bits(ctx.dimension(), 0);
    for (int k : ctx.subalgebra_indices()) bits[k] = 1;
    for (int b : bits) out << b << ' ';
    out << "\n";
    if (ctx.h_marker()) {
      out << "h_marker\n";
      const Matrix& z = *ctx.h_marker();
      for (Eigen::Index r = 0; r < z.rows(); ++r)
        for (Eigen::Index c = 0; c < z.cols(); ++c) out << z(r, c).real() << ' ' << z(r, c).imag() << "  ";
      out << "\n";
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Element-level operations

AlgebraElement make_element(const ContextPtr& ctx, const Eigen::VectorXd& coords) {
  return {ctx->from_coordinates(coords), ctx, false};
}

AlgebraElement basis_element(const ContextPtr& ctx, int index) {
  if (index < 0 || index >= ctx->dimension()) fail(ErrorKind::IndexOutOfRange, "basis index out of range");
  return {ctx->basis()[index], ctx, false};
}

AlgebraElement zero_element(const ContextPtr& ctx) {
  return {Matrix::Zero(ctx->matrix_size(), ctx->matrix_size()), ctx, false};
}

GroupElement identity_element(const ContextPtr& ctx) {
  return {Matrix::Identity(ctx->matrix_size(), ctx->matrix_size()), ctx, false};
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_context(x.context, y.context);
  const auto& ctx = *x.context;
  const Matrix raw = commutator(x.matrix, y.matrix);
  const bool cplx = x.complexified || y.complexified;
  Matrix expanded;
  double residual = 0.0;
  if (cplx) {
    expanded = ctx.from_complex_coordinates(ctx.complex_coordinates(raw));
  } else {
    expanded = ctx.from_coordinates(ctx.coordinates(raw));
  }
  residual = (raw - expanded).norm();
  if (residual > ctx.tolerance() * std::max(1.0, raw.norm())) {
    fail(ErrorKind::ClosureViolation, "bracket leaves the algebra");
  }
  return {expanded, x.context, cplx};
}

GroupElement group_exp(const AlgebraElement& x) {
  return {expm(x.matrix), x.context, x.complexified};
}

AlgebraElement group_log(const GroupElement& a) {
  const auto& ctx = *a.context;
  const Matrix raw = logm(a.matrix);
  if (a.complexified) return {ctx.from_complex_coordinates(ctx.complex_coordinates(raw)), a.context, true};
  return {ctx.from_coordinates(ctx.coordinates(raw)), a.context, false};
}

AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& x) {
  require_same_context(g.context, x.context);
  return {g.matrix * x.matrix * g.matrix.inverse(), x.context, x.complexified || g.complexified};
}

AlgebraElement project_h(const AlgebraElement& x) {
  return {x.context->project_h(x.matrix), x.context, x.complexified};
}

AlgebraElement project_m(const AlgebraElement& x) {
  return {x.context->project_m(x.matrix), x.context, x.complexified};
}

double inner(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_context(x.context, y.context);
  return x.context->inner(x.matrix, y.matrix);
}

AlgebraElement times_i(const AlgebraElement& x) { return {kI * x.matrix, x.context, true}; }

namespace {

Eigen::VectorXd random_direction(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd c(d);
  do {
    for (int k = 0; k < d; ++k) c[k] = normal(rng);
  } while (c.norm() < 1e-8);
  return c;
}

// Coefficients c of an element with <X, X> = 1 along a random direction in the given index set.
Eigen::VectorXd random_unit_coords(const LieAlgebraContext& ctx, const std::vector<int>& support,
                                   std::mt19937_64& rng) {
  const Eigen::VectorXd raw = random_direction(static_cast<int>(support.size()), rng);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(ctx.dimension());
  for (std::size_t k = 0; k < support.size(); ++k) c[support[k]] = raw[static_cast<Eigen::Index>(k)];
  return c / std::sqrt(c.dot(ctx.inner_product_matrix() * c));
}

std::vector<int> all_indices(int d) {
  std::vector<int> out(d);
  for (int k = 0; k < d; ++k) out[k] = k;
  return out;
}

}  // namespace

AlgebraElement random_element(const ContextPtr& ctx, std::mt19937_64& rng, double max_norm) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = max_norm * unit(rng);
  return make_element(ctx, r * random_unit_coords(*ctx, all_indices(ctx->dimension()), rng));
}

AlgebraElement random_m_element(const ContextPtr& ctx, std::mt19937_64& rng, double max_norm) {
  if (!ctx->has_split()) fail(ErrorKind::NoSplitConfigured, "context has no reductive split");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = max_norm * unit(rng);
  return make_element(ctx, r * random_unit_coords(*ctx, ctx->complement_indices(), rng));
}

GroupElement random_h_group_element(const ContextPtr& ctx, std::mt19937_64& rng) {
  if (!ctx->has_split()) fail(ErrorKind::NoSplitConfigured, "context has no reductive split");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = 3.0 * unit(rng);
  const AlgebraElement x = make_element(ctx, r * random_unit_coords(*ctx, ctx->subalgebra_indices(), rng));
  return group_exp(x);
}

GroupElement random_group_element(const ContextPtr& ctx, std::mt19937_64& rng) {
  return group_exp(random_element(ctx, rng, 3.0));
}

}  // namespace hk
