#pragma once

#include <complex>

#include <Eigen/Dense>

namespace hk {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

inline Matrix commutator(const Matrix& x, const Matrix& y) { return x * y - y * x; }

/// Matrix exponential: scaling and squaring around a degree-13 Padé approximant.
Matrix expm(const Matrix& a);

/// Principal square root by the Denman-Beavers iteration.
Matrix sqrtm(const Matrix& a);

/// Principal logarithm by inverse scaling and squaring. Throws
/// LogBranchFailure when an eigenvalue lies on the closed negative real axis.
Matrix logm(const Matrix& a);

/// Unitary factor U of the polar decomposition a = U P.
Matrix polar_unitary(const Matrix& a);

struct PolarFactors {
  Matrix unitary;
  Matrix positive;  // Hermitian positive-definite
};

PolarFactors polar_decompose(const Matrix& a);

double one_norm(const Matrix& a);

}  // namespace hk
