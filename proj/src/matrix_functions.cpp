#include "hkgeom/matrix_functions.hpp"

#include <array>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "hkgeom/error.hpp"

namespace hk {

double one_norm(const Matrix& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

namespace {

// Higham (2005), Table 2.3: Padé [13/13] coefficients and the matching theta.
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

Matrix expm(const Matrix& a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return a;
  const double norm = one_norm(a);
  int squarings = 0;
  if (norm > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  const Matrix scaled = a / std::ldexp(1.0, squarings);

  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = scaled * scaled;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const auto& b = kPade13;
  const Matrix u_inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
  const Matrix u = scaled * (a6 * u_inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
  const Matrix v_inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
  const Matrix v = a6 * v_inner + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;

  Matrix result = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

Matrix sqrtm(const Matrix& a) {
  const Eigen::Index n = a.rows();
  Matrix y = a;
  Matrix z = Matrix::Identity(n, n);
  for (int iter = 0; iter < 100; ++iter) {
    const Matrix y_inv = y.inverse();
    const Matrix z_inv = z.inverse();
    const Matrix y_next = 0.5 * (y + z_inv);
    z = 0.5 * (z + y_inv);
    const double change = one_norm(y_next - y);
    y = y_next;
    if (change <= 1e-15 * std::max(1.0, one_norm(y))) break;
  }
  return y;
}

Matrix logm(const Matrix& a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return a;
  Eigen::ComplexEigenSolver<Matrix> eig(a, false);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex lambda = eig.eigenvalues()[k];
    const double mag = std::abs(lambda);
    if (mag < 1e-300 || (lambda.real() < 0.0 && std::abs(lambda.imag()) <= 1e-12 * mag)) {
      fail(ErrorKind::LogBranchFailure,
           "eigenvalue on the closed negative real axis; principal logarithm undefined");
    }
  }

  const Matrix ident = Matrix::Identity(n, n);
  Matrix m = a;
  int roots = 0;
  while (one_norm(m - ident) > 0.25 && roots < 64) {
    m = sqrtm(m);
    ++roots;
  }

  // log(M) = 2 atanh(Z), Z = (M - I)(M + I)^{-1}
  const Matrix z = (m + ident).partialPivLu().solve(m - ident).eval();
  const Matrix z2 = z * z;
  Matrix power = z;
  Matrix series = z;
  for (int k = 1; k < 60; ++k) {
    power = power * z2;
    const Matrix term = power / static_cast<double>(2 * k + 1);
    series += term;
    if (one_norm(term) < 1e-18) break;
  }
  return std::ldexp(2.0, roots) * series;
}

PolarFactors polar_decompose(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix& u = svd.matrixU();
  const Matrix& v = svd.matrixV();
  PolarFactors out;
  out.unitary = u * v.adjoint();
  out.positive = v * svd.singularValues().cast<Complex>().asDiagonal() * v.adjoint();
  return out;
}

Matrix polar_unitary(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace hk
