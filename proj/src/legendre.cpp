#include "lieapp/legendre.hpp"

#include <cmath>

#include "lieapp/parallel.hpp"

namespace lieapp {

namespace {

Vec6 embed(const Vec3& e) {
  Vec6 v = Vec6::Zero();
  v.head<3>() = e;
  return v;
}

}  // namespace

PointLift lift_values(const Vec3& x, const Vec3& n, const Vec3& xu, const Vec3& xv,
                      const Vec3& nu, const Vec3& nv, double k1, double k2) {
  const Frame& F = Frame::standard();
  PointLift out;
  out.f = embed(x) + F.q0 + 0.5 * x.squaredNorm() * F.q_inf;
  out.t = embed(n) + n.dot(x) * F.q_inf + F.p;
  out.fu = embed(xu) + xu.dot(x) * F.q_inf;
  out.fv = embed(xv) + xv.dot(x) * F.q_inf;
  // (n, dx) = 0 by tangency, so dt = dn + (dn, x) q_inf
  out.tu = embed(nu) + nu.dot(x) * F.q_inf;
  out.tv = embed(nv) + nv.dot(x) * F.q_inf;
  out.k1 = k1;
  out.k2 = k2;
  return out;
}

PointLift lift_point(const SurfaceChart& chart, double u, double v) {
  return lift_values(chart.x(u, v), chart.n(u, v), chart.xu(u, v), chart.xv(u, v),
                     chart.nu(u, v), chart.nv(u, v), chart.kappa1(u, v), chart.kappa2(u, v));
}

namespace kernels {

void lift_vertices(const SampledGrid& g, LegendreGrid& L, bool parallel) {
  auto body = [&](int k) {
    PointLift pl = lift_values(g.x[k], g.n[k], g.x_u[k], g.x_v[k], g.n_u[k], g.n_v[k],
                               g.kappa1[k], g.kappa2[k]);
    L.f[k] = pl.f;
    L.t[k] = pl.t;
    L.fu[k] = pl.fu;
    L.fv[k] = pl.fv;
    L.tu[k] = pl.tu;
    L.tv[k] = pl.tv;
    L.s1[k] = pl.t + g.kappa1[k] * pl.f;
    L.s2[k] = pl.t + g.kappa2[k] * pl.f;
  };
  const int N = g.nu * g.nv;
  if (parallel) {
    par::for_each(N, body);
  } else {
    for (int k = 0; k < N; ++k) body(k);
  }
}

}  // namespace kernels

LegendreGrid lift_euclidean(std::shared_ptr<const SampledGrid> grid) {
  const SampledGrid& g = *grid;
  if (!g.has_partials)
    throw Error(ErrorCode::GeometryError, "lift needs first-order partials");
  LegendreGrid L;
  L.nu = g.nu;
  L.nv = g.nv;
  L.hu = g.hu;
  L.hv = g.hv;
  const int N = g.nu * g.nv;
  L.f.resize(N);
  L.t.resize(N);
  L.fu.resize(N);
  L.fv.resize(N);
  L.tu.resize(N);
  L.tv.resize(N);
  L.s1.resize(N);
  L.s2.resize(N);
  L.kappa1 = g.kappa1;
  L.kappa2 = g.kappa2;
  L.umbilic_free = g.umbilic_free;
  L.base = grid;

  kernels::lift_vertices(g, L, parallel_enabled());

  LegendreReport rep = check_legendre(L);
  if (rep.max_isotropy > 1e-8 || rep.max_normalization > 1e-8 || rep.max_contact > 1e-6)
    throw Error(ErrorCode::GeometryError, "lift violates isotropy/contact invariants");
  return L;
}

LegendreGrid lift_euclidean(const SampledGrid& grid) {
  return lift_euclidean(std::make_shared<SampledGrid>(grid));
}

std::pair<Vec6, Vec6> space_form_projection(const Vec6& A, const Vec6& B, const Vec6& q,
                                            const Vec6& p) {
  Mat6 tau = wedge_m(A, B);
  Vec6 tp = tau * p;
  Vec6 tq = tau * q;
  double dp = pair(tp, q);
  double dq = pair(tq, p);
  double scale = A.norm() * B.norm() * std::max(q.norm() * p.norm(), 1e-300);
  if (std::abs(dp) < 1e-10 * scale || std::abs(dq) < 1e-10 * scale)
    throw Error(ErrorCode::ProjectionSingular, "plane has no projection to this space form");
  return {-tp / dp, -tq / dq};
}

LegendreReport check_legendre(const LegendreGrid& L) {
  const Frame& F = Frame::standard();
  LegendreReport r;
  r.vertex_count = L.nu * L.nv;
  r.min_immersion = std::numeric_limits<double>::infinity();
  for (int k = 0; k < r.vertex_count; ++k) {
    const Vec6 &f = L.f[k], &t = L.t[k];
    r.max_isotropy = std::max(
        {r.max_isotropy, std::abs(pair(f, f)), std::abs(pair(t, t)), std::abs(pair(f, t))});
    r.max_normalization =
        std::max({r.max_normalization, std::abs(pair(f, F.q_inf) + 1.0),
                  std::abs(pair(f, F.p)), std::abs(pair(t, F.p) + 1.0),
                  std::abs(pair(t, F.q_inf))});
    r.max_contact = std::max({r.max_contact, std::abs(pair(L.fu[k], t)),
                              std::abs(pair(L.fv[k], t)), std::abs(pair(L.tu[k], f)),
                              std::abs(pair(L.tv[k], f))});
    // d_u s1 and d_v s2 must fall into f = span(s1, s2); test against the
    // orthogonal complement generators f, t, df_u, df_v of f^perp (the
    // multiplier derivative lands in f and is not needed)
    Vec6 ds1 = L.tu[k] + L.kappa1[k] * L.fu[k];
    Vec6 ds2 = L.tv[k] + L.kappa2[k] * L.fv[k];
    double nu1 = L.fu[k].norm(), nv1 = L.fv[k].norm();
    double s = std::max({1.0, nu1, nv1});
    r.max_curvature_sphere = std::max(
        {r.max_curvature_sphere, std::abs(pair(ds1, f)) / s, std::abs(pair(ds1, t)) / s,
         std::abs(pair(ds1, L.fu[k])) / (s * nu1), std::abs(pair(ds1, L.fv[k])) / (s * nv1),
         std::abs(pair(ds2, f)) / s, std::abs(pair(ds2, t)) / s,
         std::abs(pair(ds2, L.fu[k])) / (s * nu1), std::abs(pair(ds2, L.fv[k])) / (s * nv1)});
    Eigen::Matrix<double, 6, 2> D;
    D.col(0) = L.fu[k];
    D.col(1) = L.fv[k];
    Eigen::JacobiSVD<Eigen::Matrix<double, 6, 2>> svd(D);
    r.min_immersion = std::min(r.min_immersion, svd.singularValues()(1));
    r.umbilic_free_count += L.umbilic_free[k];
  }
  return r;
}

double recover_kappa_u(const LegendreGrid& L, int i, int j) {
  int k = L.idx(i, j);
  // mu with d_u(t + mu f) in f: orthogonality to df_u is the binding condition
  return -pair(L.tu[k], L.fu[k]) / pair(L.fu[k], L.fu[k]);
}

double recover_kappa_v(const LegendreGrid& L, int i, int j) {
  int k = L.idx(i, j);
  return -pair(L.tv[k], L.fv[k]) / pair(L.fv[k], L.fv[k]);
}

}  // namespace lieapp
