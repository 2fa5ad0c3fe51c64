#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "hkgeom/matrix_functions.hpp"

namespace hk {

/// Which matrix group the exponential of the algebra lands in. Decides the
/// membership tests and the reprojection applied by the ODE integrators.
enum class GroupModel {
  SpecialUnitary,     // SU(n), complexification SL(n, C)
  SpecialOrthogonal,  // SO(n), complexification SO(n, C)
  Torus,              // diagonal unitary, complexification diagonal invertible
  Unitary,            // U(n), complexification GL(n, C)
};

/**
 * Matrix model of a compact Lie algebra g together with an Ad-invariant inner
 * product and an optional orthogonal reductive split g = h + m.
 *
 * The constructor validates every structural invariant (independence, closure
 * of the bracket, Ad-invariance of the inner product, orthogonality and
 * reductivity of the split) and throws GeometryError on the first violation.
 */
class LieAlgebraContext {
 public:
  LieAlgebraContext(std::string name, std::vector<Matrix> basis, RealMatrix inner_product,
                    std::vector<bool> subalgebra_mask, GroupModel model,
                    std::optional<Matrix> h_marker = std::nullopt);

  const std::string& name() const { return name_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  int matrix_size() const { return static_cast<int>(basis_.front().rows()); }
  const std::vector<Matrix>& basis() const { return basis_; }
  const RealMatrix& inner_product_matrix() const { return gram_; }
  GroupModel group_model() const { return model_; }
  double tolerance() const { return 1e-9; }

  bool has_split() const { return !subalgebra_.empty() && !complement_.empty(); }
  const std::vector<int>& subalgebra_indices() const { return subalgebra_; }
  const std::vector<int>& complement_indices() const { return complement_; }
  const std::optional<Matrix>& h_marker() const { return h_marker_; }

  /// Real coordinates of x in the basis (least squares).
  Eigen::VectorXd coordinates(const Matrix& x) const;
  /// Complex coordinates of z in the basis of the complexified algebra.
  Eigen::VectorXcd complex_coordinates(const Matrix& z) const;
  Matrix from_coordinates(const Eigen::VectorXd& c) const;
  Matrix from_complex_coordinates(const Eigen::VectorXcd& c) const;

  /// Frobenius distance from x to span_R(basis).
  double closure_residual(const Matrix& x) const;
  /// Frobenius distance from z to span_C(basis).
  double complex_closure_residual(const Matrix& z) const;

  double inner(const Matrix& x, const Matrix& y) const;
  double norm(const Matrix& x) const;

  /// Projections onto h and m. Accept complexified elements (applied to the
  /// real and imaginary parts). Throw NoSplitConfigured without a split.
  Matrix project_h(const Matrix& x) const;
  Matrix project_m(const Matrix& x) const;

  bool in_group(const Matrix& g, double tol = 1e-9) const;
  bool in_complex_group(const Matrix& g, double tol = 1e-9) const;
  Matrix reproject_group(const Matrix& g) const;
  Matrix reproject_complex_group(const Matrix& g) const;

  /// Membership predicate for the complexified subgroup H^C. Realized as
  /// commuting with the configured h-marker (H^C is its centralizer).
  bool in_complex_subgroup(const Matrix& z, double tol = 1e-9) const;

  /// Re-checks closure and the orthogonal split; throws ClosureViolation.
  void validate() const;

 private:

  std::string name_;
  std::vector<Matrix> basis_;
  RealMatrix gram_;
  GroupModel model_;
  std::vector<int> subalgebra_;
  std::vector<int> complement_;
  std::optional<Matrix> h_marker_;
  RealMatrix real_pinv_;     // d x 2m^2
  RealMatrix complex_pinv_;  // 2d x 2m^2
};

using ContextPtr = std::shared_ptr<const LieAlgebraContext>;

/// Built-in contexts: su2, su3, so3, so4, t1, t2, su2_u1, su3_u2.
ContextPtr builtin_context(std::string_view name);
std::vector<std::string> builtin_context_names();

/// Parse the keyword-tagged structure-constants text format (see README).
ContextPtr parse_structure_text(const std::string& text);
ContextPtr load_structure_file(const std::string& path);
std::string format_structure_text(const LieAlgebraContext& ctx);

struct AlgebraElement {
  Matrix matrix;
  ContextPtr context;
  bool complexified = false;
};

struct GroupElement {
  Matrix matrix;
  ContextPtr context;
  bool complexified = false;
};

AlgebraElement make_element(const ContextPtr& ctx, const Eigen::VectorXd& coords);
AlgebraElement basis_element(const ContextPtr& ctx, int index);
AlgebraElement zero_element(const ContextPtr& ctx);
GroupElement identity_element(const ContextPtr& ctx);

/// Commutator XY - YX re-expanded in the basis.
AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);
GroupElement group_exp(const AlgebraElement& x);
AlgebraElement group_log(const GroupElement& a);
/// g X g^{-1}.
AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& x);
AlgebraElement project_h(const AlgebraElement& x);
AlgebraElement project_m(const AlgebraElement& x);
double inner(const AlgebraElement& x, const AlgebraElement& y);

/// i * X as an element of the complexified algebra.
AlgebraElement times_i(const AlgebraElement& x);

AlgebraElement random_element(const ContextPtr& ctx, std::mt19937_64& rng, double max_norm);
/// Random element supported on the complement m of the split.
AlgebraElement random_m_element(const ContextPtr& ctx, std::mt19937_64& rng, double max_norm);
/// Random element of the subgroup H = exp(h).
GroupElement random_h_group_element(const ContextPtr& ctx, std::mt19937_64& rng);
GroupElement random_group_element(const ContextPtr& ctx, std::mt19937_64& rng);

}  // namespace hk
