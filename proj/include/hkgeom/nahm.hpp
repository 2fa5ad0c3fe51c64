#pragma once

#include <array>
#include <optional>
#include <string>

#include "hkgeom/gauge_path.hpp"
#include "hkgeom/lie_core.hpp"

namespace hk {

/// Four algebra-valued paths on a shared grid.
struct NahmConfiguration {
  std::array<GaugePath, 4> t;

  int intervals() const { return t[0].intervals(); }
  const ContextPtr& context() const { return t[0].context(); }
  void require_shared_grid() const;

  /// α = T0 + iT1 and β = T2 + iT3.
  GaugePath alpha() const;
  GaugePath beta() const;
};

NahmConfiguration zero_configuration(const ContextPtr& ctx, int intervals);

/// Tangent vector (X0..X3) at a configuration; the path space is linear so
/// these are just four algebra paths.
using PathTangent = NahmConfiguration;

/// Cyclic residuals T_a' + [T0, T_a] + [T_b, T_c] for (a, b, c) = (1, 2, 3), (2, 3, 1), (3, 1, 2).
std::array<GaugePath, 3> nahm_residual(const NahmConfiguration& t);
double residual_sup(const std::array<GaugePath, 3>& r);
/// T1' + [T0, T1].
GaugePath baby_nahm_residual(const GaugePath& t0, const GaugePath& t1);

/// g·T0 = g T0 g⁻¹ - g' g⁻¹ and g·T_j = g T_j g⁻¹, with g' from the path's derivative scheme.
NahmConfiguration gauge_act(const GaugePath& g, const NahmConfiguration& t);
/// The same action on a single connection-type path (used for g·α).
GaugePath gauge_act_connection(const GaugePath& g, const GaugePath& a);

/// Pointwise product of two group paths.
GaugePath multiply_paths(const GaugePath& g, const GaugePath& h);

/// Solves dg/dt = g·A(t) with g(1) = I backward from t = 1 by classical RK4,
/// reading A at half steps by cubic interpolation and projecting back to the
/// group (or its complexification when A is complex) after every step.
GaugePath solve_gauge_ode(const GaugePath& a);

struct BabyNahmPair {
  GaugePath t0;
  GaugePath t1;
};

/// (a, v) ↦ (-h' h⁻¹, h v h⁻¹) for a path h with h(0) = a and h(1) = I.
/// Without an explicit h the default is h(t) = exp((1-t) log a), whose T0 is the constant log a.
BabyNahmPair embed_tangent(const GroupElement& a, const AlgebraElement& v, int intervals);
BabyNahmPair embed_tangent(const GroupElement& a, const AlgebraElement& v, const GaugePath& h_path);

/// g(0)⁻¹ for g = solve_gauge_ode(T0 + iT1) with (T0, T1) = embed_tangent(a, v).
GroupElement roundtrip_adapted(const GroupElement& a, const AlgebraElement& v, int intervals);
GroupElement roundtrip_adapted(const GroupElement& a, const AlgebraElement& v, const GaugePath& h_path);

/// ∫ Σ_j <X_j, Y_j> dt by the composite trapezoid rule.
double l2_metric(const PathTangent& x, const PathTangent& y);
/// ∫ <X0,Y1> - <X1,Y0> + <X2,Y3> - <X3,Y2> dt.
double omega_I(const PathTangent& x, const PathTangent& y);
/// Multiplication by i on (α, β): (X0, X1, X2, X3) ↦ (-X1, X0, -X3, X2).
PathTangent apply_I(const PathTangent& x);

/// ½‖T1‖² + ¼‖T2‖² + ¼‖T3‖² in the L² norm.
double kahler_potential_f(const NahmConfiguration& t);

/// d(I df)(X, Y) for constant vector fields X, Y on the path space, with (I df)(Z) = -df(IZ),
/// computed by central differences of the potential with the given increment.
double d_I_df(const NahmConfiguration& t, const PathTangent& x, const PathTangent& y, double increment = 1e-3);

/// Configuration plus eps times a tangent.
NahmConfiguration displaced(const NahmConfiguration& t, const PathTangent& x, double eps);

/// (π_h T1(1), π_h T2(1), π_h T3(1)).
std::array<AlgebraElement, 3> moment_map_H(const NahmConfiguration& t);

/// (T2, T3) ↦ (cos θ T2 - sin θ T3, sin θ T2 + cos θ T3); T0, T1 fixed.
NahmConfiguration s1_action(double theta, const NahmConfiguration& t);

/// RK4 evolution of the three cyclic equations from T1, T2, T3 at t = 0 with T0 prescribed.
/// Throws BlowupDetected once any node norm exceeds `bound`.
NahmConfiguration nahm_integrate(const std::array<AlgebraElement, 3>& initial, const GaugePath& t0,
                                 double bound = 1e6);

/// Writes T0..T3 as CSV files plus manifest.json into `dir`.
void write_configuration(const NahmConfiguration& t, const std::string& dir);
NahmConfiguration read_configuration(const std::string& dir);

}  // namespace hk
