#pragma once

#include <optional>

#include "lieapp/gauge.hpp"

namespace lieapp {

/// Polynomial conserved quantity p(t) = sum_k p_k t^k of the connection
/// pencil d + t eta: coefficient vector fields over the grid. For genuine
/// quantities p_0 is spatially constant and the top coefficient lies in f.
struct PolyCQ {
  int nu = 0, nv = 0;
  std::vector<std::vector<Vec6>> coeff;  // coeff[k][vertex]

  int degree() const { return static_cast<int>(coeff.size()) - 1; }
  int idx(int i, int j) const { return i + nu * j; }
  Vec6 eval(double t, int vertex) const;
  double coeff_scale(int k) const;  // max vertex norm of coefficient k
};

PolyCQ constant_cq(int nu, int nv, const Vec6& v);

/// alpha * p + beta * q, with vanishing top coefficients trimmed.
PolyCQ linear_combination(double alpha, const PolyCQ& p, double beta, const PolyCQ& q,
                          double trim_tol = 1e-10);

struct CQReport {
  // normalized residuals: dp_0, then dp_k + eta p_{k-1} per unit edge
  // length, and the top-degree term eta p_d
  std::vector<double> coeff_residual;
  double top_residual = 0;
  double worst = 0;
};

/// Edge-discretized check that (d + t eta) p(t) = 0 coefficient by
/// coefficient. Second-order accurate in the grid step.
CQReport verify_cq(const GaugeOneForm& eta, const PolyCQ& p);

/// The linear pair of a linear Weingarten surface:
///   p(t) = p + t(-b f + a t_plane),   q(t) = q_inf + t(c f - b t_plane).
std::pair<PolyCQ, PolyCQ> lw_conserved_pair(const LegendreGrid& L, double a, double b,
                                            double c);

struct NormPoly {
  std::vector<double> coeff;        // spatial mean per degree
  std::vector<double> spatial_dev;  // max |pointwise - mean|
  double max_dev() const;
};
NormPoly norm_polynomial(const PolyCQ& p);

enum class Type1Class {
  isothermic,
  guichard,
  l_isothermic,
  degenerate_constant_term,
  not_type1,
};
const char* to_string(Type1Class c);

/// Branches on the norm polynomial of a degree-1 quantity: nonzero constant,
/// linear with nonzero constant term, identically zero, or linear with
/// vanishing constant term (reported as its own class, never reassigned).
Type1Class classify_type1(const PolyCQ& p, double tol = 1e-8);
Type1Class classify_type1(const NormPoly& np, double tol = 1e-8);

struct PencilMetrics {
  Mat2 g0, ginf;
  double det_ginf = 0;
  double reproduction_dev = 0;  // max over sampled t of |g_t - (alpha(t),beta(t))|
};

/// Pencil of metrics g_t = g_0 + t g_inf on the span of two linear
/// quantities. Throws DependentQuantities.
PencilMetrics pencil_metrics(const PolyCQ& p, const PolyCQ& q);

struct WeingartenTensor {
  SymTensor W;
  double a = 0, b = 0, c = 0;
  double discriminant = 0;  // b^2 - ac
};

/// Inverts the pencil into the Weingarten tensor
/// W = a q0.q0 + 2b q0.p0 + c p0.p0 with (a,b,c) read off g_inf, and
/// cross-checks the direct inversion route up to scale.
/// Throws DegenerateGInfinity.
WeingartenTensor weingarten_from_pencil(const PencilMetrics& P, const Vec6& p0,
                                        const Vec6& q0);

/// Root t0 with g_0 = -t0 g_inf when the pencil collapses (flat front),
/// nullopt otherwise. Least-squares proportionality at tolerance 1e-8.
std::optional<double> flat_front_detect(const PencilMetrics& P);

struct ComplementaryRoots {
  bool degenerate_all_m = false;  // identically-zero norm polynomial
  std::vector<double> roots;      // nonzero real roots m
  std::vector<std::vector<Vec6>> sections;  // p(m) per vertex
};
ComplementaryRoots complementary_roots(const PolyCQ& p);

/// exp(t tau) p(t) for vertexwise tau in wedge^2 f (tau^2 = 0, so the action
/// is p_k -> p_k + tau p_{k-1}); drops the top degree when it vanishes.
PolyCQ gauge_transform_cq(const PolyCQ& p, const std::vector<Mat6>& tau,
                          double trim_tol = 1e-10);

/// c p + b q collapses to a constant quantity exactly in the tubular case
/// b^2 = ac; returns that constant when it does.
std::optional<Vec6> tubular_constant_cq(const PolyCQ& p, const PolyCQ& q, double a, double b,
                                        double c, double tol = 1e-8);

}  // namespace lieapp
