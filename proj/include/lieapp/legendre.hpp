#pragma once

#include <memory>

#include "lieapp/surfaces.hpp"

namespace lieapp {

/// Contact lift of one parameter point: the isotropic plane span(f, t) with
/// the Euclidean normalizations (f, q_inf) = -1, (t, p) = -1, plus analytic
/// first partials and the principal curvatures.
struct PointLift {
  Vec6 f, t;
  Vec6 fu, fv, tu, tv;
  double k1 = 0, k2 = 0;
};

PointLift lift_point(const SurfaceChart& chart, double u, double v);
PointLift lift_values(const Vec3& x, const Vec3& n, const Vec3& xu, const Vec3& xv,
                      const Vec3& nu, const Vec3& nv, double k1, double k2);

/// Sampled Legendre map: per-vertex lifts, curvature sphere lifts
/// s_i = t + kappa_i f, and analytic partials.
struct LegendreGrid {
  int nu = 0, nv = 0;
  double hu = 0, hv = 0;

  std::vector<Vec6> f, t;
  std::vector<Vec6> fu, fv, tu, tv;
  std::vector<Vec6> s1, s2;  // curvature sphere lifts
  std::vector<double> kappa1, kappa2;
  std::vector<uint8_t> umbilic_free;

  std::shared_ptr<const SampledGrid> base;

  int idx(int i, int j) const { return i + nu * j; }
  bool has_chart() const { return base && base->chart; }
};

/// Lifts x to f = x + q0 + (x,x)/2 q_inf and n to t = n + (n,x) q_inf + p.
/// Throws GeometryError when the lift violates the isotropy/contact
/// invariants beyond tolerance.
LegendreGrid lift_euclidean(const SampledGrid& grid);
LegendreGrid lift_euclidean(std::shared_ptr<const SampledGrid> grid);

/// Projects an isotropic plane span(A, B) to the space form pair determined
/// by (q, p):  f' = -tau p / (tau p, q),  t' = -tau q / (tau q, p)  with
/// tau = A ^ B. Throws ProjectionSingular when a denominator vanishes.
std::pair<Vec6, Vec6> space_form_projection(const Vec6& A, const Vec6& B, const Vec6& q,
                                            const Vec6& p);

struct LegendreReport {
  double max_isotropy = 0;          // |(f,f)|, |(t,t)|, |(f,t)|
  double max_normalization = 0;     // |(f,q_inf)+1|, |(f,p)|, |(t,p)+1|, |(t,q_inf)|
  double max_contact = 0;           // |(df,t)|, |(dt,f)|
  double max_curvature_sphere = 0;  // residual of d_u s1, d_v s2 against f
  double min_immersion = 0;         // smallest singular value of [df_u df_v]
  int umbilic_free_count = 0;
  int vertex_count = 0;
};

LegendreReport check_legendre(const LegendreGrid& L);

/// Recovers kappa along a coordinate direction as the multiplier mu that
/// makes d(t + mu f) fall back into f. Cross-check for the stored values.
double recover_kappa_u(const LegendreGrid& L, int i, int j);
double recover_kappa_v(const LegendreGrid& L, int i, int j);

}  // namespace lieapp
