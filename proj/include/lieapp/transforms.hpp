#pragma once

#include "lieapp/conserved.hpp"

namespace lieapp {

enum class Sweep { RowFirst, ColumnFirst };

/// Trivializing gauge of the flat connection d + t eta: a per-vertex
/// G-orthogonal map with T = I at the basepoint, propagated edgewise by
/// T -> T exp(t eta_edge) along the fixed sweep. Orthogonality is enforced
/// by polar re-projection whenever the defect exceeds 1e-10.
struct GaugeField {
  int nu = 0, nv = 0;
  double t = 0;
  int bi = 0, bj = 0;
  Sweep sweep = Sweep::RowFirst;
  std::vector<Mat6> T;

  double max_orth_defect = 0;
  double flatness_ratio = 0;  // dominance of the non-closed part (diagnostic)

  int idx(int i, int j) const { return i + nu * j; }
  Mat6 inverse_at(int k) const;  // G T^T G
};

/// Throws NotApproximatelyFlat when the plaquette residue of eta refines
/// like a genuine curvature term instead of quadrature noise.
GaugeField integrate_gauge(const GaugeOneForm& eta, double t, Sweep sweep = Sweep::RowFirst);

/// Max over vertices of ||T_row - T_col|| between the two sweep orders;
/// an O(h^2) witness of path independence.
double sweep_disagreement(const GaugeOneForm& eta, double t);

/// Per-plaquette defect ||exp(t e1) exp(t e2) exp(-t e3) exp(-t e4) - I||.
std::vector<double> holonomy_residual(const GaugeOneForm& eta, double t);

struct TransportedCQ {
  PolyCQ cq;
  CQReport report;                  // against the transformed potential
  double constant_term_dev = 0;     // spatial deviation of T(t) p(t)
};

struct CalapsoResult {
  double t = 0;
  std::vector<Vec6> f, tp, s1, s2;  // transformed plane and sphere lifts
  GaugeOneForm eta_t;               // Ad_T eta
  QuadDiff q_before, q_after;
  double q_rel_dev = 0;             // max |q_t - q| / max |q|
  std::vector<TransportedCQ> cqs;
};

/// f^t = T(t) f together with the conjugated potential, the invariance check
/// of the quadratic differential, and the transported conserved quantities
/// p^t(s) = T(t) p(s + t).
CalapsoResult calapso_transform(const LegendreGrid& L, const GaugeOneForm& eta, double t,
                                const std::vector<PolyCQ>& cqs = {});

struct DarbouxResult {
  double m = 0;
  Vec6 seed;                  // constant null line representative
  std::vector<Vec6> shat;     // T^{-1}(m) seed, the parallel null section
  std::vector<Vec6> s0;       // f intersect shat-perp
  double regularity_margin = 0;  // min normalized |(shat, sigma_i)|
  double isotropy_max = 0;       // plane isotropy residual of span(s0, shat)
  int nu = 0, nv = 0;
  int idx(int i, int j) const { return i + nu * j; }
};

/// Darboux transform with parameter m from the constant seed line.
/// Throws RegularityViolation when the seed meets a curvature sphere
/// (margin below 1e-4) and SingularIntersection when f itself becomes
/// orthogonal to the parallel section.
DarbouxResult darboux_transform(const LegendreGrid& L, const GaugeOneForm& eta, double m,
                                const Vec6& Lhat);

/// Transport of a conserved quantity to the transformed surface. With an
/// unconstrained seed the degree rises by one; when the seed is orthogonal
/// to p(m) the degree and the norm polynomial are preserved. The line s in f
/// is taken as the complement of s0 most transverse to shat.
PolyCQ darboux_cq_transport(const DarbouxResult& dr, const LegendreGrid& L, const PolyCQ& p);

/// Euclidean re-projection of a transformed plane field span(A,B):
/// positions, unit normals, finite-difference principal curvatures.
struct ProjectedSurface {
  int nu = 0, nv = 0;
  std::vector<Vec3> x, n;
  std::vector<double> kappa1, kappa2;
  std::vector<Vec6> fhat, that;  // normalized point/tangent lifts
  int idx(int i, int j) const { return i + nu * j; }
};
ProjectedSurface project_to_euclidean(const std::vector<Vec6>& A, const std::vector<Vec6>& B,
                                      int nu, int nv, double hu, double hv);

struct LWDarbouxResult {
  DarbouxResult transform;
  ProjectedSurface surface;
  double lw_residual_max = 0;  // |a K + 2b H + c| with unit (a,b,c)
  double w_residual_max = 0;   // normalized W(shat1, shat2)
  double a = 0, b = 0, c = 0;
  int degree_p = 0, degree_q = 0;  // transported degrees (expect 1 and 1)
  double norm_match_p = 0, norm_match_q = 0;
};

/// Weingarten-preserving Darboux transform: the seed is drawn from the
/// lightcone of P(m)-perp (evaluated at the basepoint), so the transported
/// pencil stays linear and the projected surface satisfies the same
/// (a, b, c) relation.
LWDarbouxResult lw_preserving_darboux(const LegendreGrid& L, const GaugeOneForm& eta,
                                      const PolyCQ& p, const PolyCQ& q, double m,
                                      double theta, double phi);

}  // namespace lieapp
