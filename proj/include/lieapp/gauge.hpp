#pragma once

#include "lieapp/legendre.hpp"

namespace lieapp {

/// Discrete 1-form with values in f ^ f-perp. Edge values are the midpoint
/// value of eta contracted with the edge vector times the edge length, i.e.
/// second-order edge integrals. Forms built from analytic charts also carry
/// exact vertex values eta(d_u), eta(d_v).
struct GaugeOneForm {
  int nu = 0, nv = 0;
  double hu = 0, hv = 0;

  std::vector<Mat6> eu;  // (nu-1) x nv  edges (i,j) -> (i+1,j)
  std::vector<Mat6> ev;  // nu x (nv-1)  edges (i,j) -> (i,j+1)
  std::vector<Mat6> vu, vv;  // optional exact vertex values
  bool is_middle_potential = false;

  int ue(int i, int j) const { return i + (nu - 1) * j; }
  int ve(int i, int j) const { return i + nu * j; }
  int vx(int i, int j) const { return i + nu * j; }
  bool has_vertex_values() const { return !vu.empty(); }

  /// Vertex value of eta(d_u)/eta(d_v): exact when stored, otherwise the
  /// average of the adjacent edge integrals divided by the step.
  Mat6 vertex_u(int i, int j) const;
  Mat6 vertex_v(int i, int j) const;
};

/// Middle potential of a linear Weingarten surface:
///   eta = c f^df - b (f^dt + t^df) + a t^dt,
/// edge-integrated at midpoints (analytic charts) or by the trapezoid rule.
/// Closed exactly when a K + 2b H + c = 0. Throws AllZeroCoefficients.
GaugeOneForm middle_potential_lw(const LegendreGrid& L, double a, double b, double c);

/// Oriented plaquette sums; for a closed form these are pure quadrature
/// residue, O(h^4) per plaquette (O(h^2) after division by the area).
std::vector<Mat6> exterior_derivative(const GaugeOneForm& eta);
double max_plaquette_norm(const std::vector<Mat6>& plaq);
double mean_plaquette_norm(const std::vector<Mat6>& plaq);

/// Per-vertex multiple of f ^ t together with exact partials; the canonical
/// gauge direction tau = lambda f^t.
struct WedgeFField {
  std::vector<Mat6> tau;
  std::vector<Mat6> dtau_u, dtau_v;  // optional exact derivatives
};
WedgeFField tau_from_lambda(const LegendreGrid& L, const std::vector<double>& lambda,
                            const std::vector<double>& dlambda_u,
                            const std::vector<double>& dlambda_v);

/// eta - d tau for vertexwise tau in wedge^2 f. Edge values subtract exact
/// finite differences of tau (discretely exact: d(d tau) = 0 to rounding);
/// vertex values use the supplied analytic derivatives when present and
/// second-order differences otherwise. Throws TauNotInWedgeF.
GaugeOneForm gauge_shift(const GaugeOneForm& eta, const LegendreGrid& L,
                         const WedgeFField& tau);

struct QuadDiff {
  int nu = 0, nv = 0;
  std::vector<double> quu, quv, qvv;
  double max_abs() const;
};

/// Curvature sphere lifts with their coordinate derivatives; the basis in
/// which the quadratic differential trace is evaluated.
struct SigmaField {
  int nu = 0, nv = 0;
  std::vector<Vec6> s1, s2, d1u, d1v, d2u, d2v;
};

SigmaField sigma_field(const LegendreGrid& L);

/// q(X,Y) = tr(sigma -> eta(X) d_Y sigma : f -> f), evaluated in the
/// curvature sphere basis via the dual frame of (s1, s2).
/// Throws FrameDegenerate at umbilic-degenerate vertices.
QuadDiff quadratic_differential(const SigmaField& S, const GaugeOneForm& eta);
QuadDiff quadratic_differential(const LegendreGrid& L, const GaugeOneForm& eta);

struct SeparabilityReport {
  double max_dv_quu = 0;  // normalized |d_v q_uu|
  double max_du_qvv = 0;  // normalized |d_u q_vv|
  double scale = 0;
};
SeparabilityReport separability_check(const QuadDiff& q, double hu, double hv);

/// Associate family x^D = c x - b n, x_hat = a n - b x of a linear
/// Weingarten surface, with the O-surface curvature identity evaluated in
/// reciprocal form. Throws AssociateSingular when a denominator degenerates
/// (tubular triples do so identically).
struct AssociateResult {
  std::vector<Vec3> xD, xhat;
  std::vector<double> inv_kD_sum;    // 1/(k1 kD2) + 1/(k2 kD1)
  std::vector<double> inv_khat_sum;  // 1/khat1 + 1/khat2
  double eq_residual_max = 0;        // O-surface identity residual
};
AssociateResult combescure_associates(const SampledGrid& g, double a, double b, double c);

}  // namespace lieapp
