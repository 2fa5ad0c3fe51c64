#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hkgeom/lie_core.hpp"

namespace hk {

enum class PathKind { Group, Algebra, ComplexGroup, ComplexAlgebra };

std::string to_string(PathKind kind);
PathKind path_kind_from_string(const std::string& s);

/// Samples of a smooth map [0, 1] → G, g, G^C or g^C at N+1 uniform nodes.
class GaugePath {
 public:
  GaugePath(ContextPtr ctx, PathKind kind, std::vector<Matrix> values);

  static GaugePath from_function(ContextPtr ctx, PathKind kind, int intervals,
                                 const std::function<Matrix(double)>& f);
  static GaugePath constant(ContextPtr ctx, PathKind kind, int intervals, const Matrix& value);

  const ContextPtr& context() const { return ctx_; }
  PathKind kind() const { return kind_; }
  bool is_group() const { return kind_ == PathKind::Group || kind_ == PathKind::ComplexGroup; }
  bool is_complex() const { return kind_ == PathKind::ComplexGroup || kind_ == PathKind::ComplexAlgebra; }

  int intervals() const { return static_cast<int>(values_.size()) - 1; }
  int nodes() const { return static_cast<int>(values_.size()); }
  double step() const { return 1.0 / intervals(); }
  double t(int k) const { return static_cast<double>(k) / intervals(); }

  const Matrix& operator[](int k) const { return values_[static_cast<std::size_t>(k)]; }
  Matrix& operator[](int k) { return values_[static_cast<std::size_t>(k)]; }
  const std::vector<Matrix>& values() const { return values_; }
  const Matrix& start() const { return values_.front(); }
  const Matrix& end() const { return values_.back(); }

  /// Node derivatives: fourth-order central differences inside, one-sided
  /// fourth-order stencils at the two nodes nearest each end. Grids with
  /// fewer than four intervals fall back to second order.
  std::vector<Matrix> derivative_values() const;
  /// Derivative as a path of the matching algebra kind (algebra paths only).
  GaugePath derivative() const;

  /// Cubic Lagrange interpolation on the four nodes around t.
  Matrix interpolate(double t) const;

  double sup_norm() const;
  /// Largest node-wise Frobenius distance.
  double max_distance(const GaugePath& other) const;
  void require_same_grid(const GaugePath& other) const;

  /// Throws ClosureViolation if a node leaves the group or algebra the kind declares.
  void validate(double tol = 1e-8) const;

  /// Header `t,re_00,im_00,...` then one row per node.
  std::string to_csv() const;
  static GaugePath from_csv(ContextPtr ctx, PathKind kind, const std::string& text);

 private:
  ContextPtr ctx_;
  PathKind kind_;
  std::vector<Matrix> values_;
};

GaugePath operator+(const GaugePath& a, const GaugePath& b);
GaugePath operator-(const GaugePath& a, const GaugePath& b);
GaugePath operator*(Complex s, const GaugePath& a);
GaugePath operator*(double s, const GaugePath& a);

}  // namespace hk
