#include "lieapp/gauge.hpp"

#include <cmath>

#include "lieapp/parallel.hpp"

namespace lieapp {

namespace {

// pointwise value of the linear Weingarten potential on a coordinate vector
Mat6 lw_value(const Vec6& f, const Vec6& t, const Vec6& df, const Vec6& dt, double a,
              double b, double c) {
  return c * wedge_m(f, df) - b * (wedge_m(f, dt) + wedge_m(t, df)) + a * wedge_m(t, dt);
}

}  // namespace

Mat6 GaugeOneForm::vertex_u(int i, int j) const {
  if (has_vertex_values()) return vu[vx(i, j)];
  if (i == 0) return eu[ue(0, j)] / hu;
  if (i == nu - 1) return eu[ue(nu - 2, j)] / hu;
  return (eu[ue(i - 1, j)] + eu[ue(i, j)]) / (2.0 * hu);
}

Mat6 GaugeOneForm::vertex_v(int i, int j) const {
  if (has_vertex_values()) return vv[vx(i, j)];
  if (j == 0) return ev[ve(i, 0)] / hv;
  if (j == nv - 1) return ev[ve(i, nv - 2)] / hv;
  return (ev[ve(i, j - 1)] + ev[ve(i, j)]) / (2.0 * hv);
}

namespace kernels {

void lw_edges(const LegendreGrid& L, double a, double b, double c, GaugeOneForm& out,
              bool parallel) {
  const SurfaceChart* chart = L.has_chart() ? L.base->chart.get() : nullptr;
  const SampledGrid* base = L.base.get();

  auto u_edge_row = [&](int j) {
    for (int i = 0; i < L.nu - 1; ++i) {
      Mat6 w;
      if (chart) {
        double um = base->u_at(i) + 0.5 * base->hu;
        double vm = base->v_at(j);
        PointLift m = lift_point(*chart, um, vm);
        w = lw_value(m.f, m.t, m.fu, m.tu, a, b, c);
      } else {
        int k0 = L.idx(i, j), k1 = L.idx(i + 1, j);
        w = 0.5 * (lw_value(L.f[k0], L.t[k0], L.fu[k0], L.tu[k0], a, b, c) +
                   lw_value(L.f[k1], L.t[k1], L.fu[k1], L.tu[k1], a, b, c));
      }
      out.eu[out.ue(i, j)] = L.hu * w;
    }
  };
  auto v_edge_row = [&](int j) {
    for (int i = 0; i < L.nu; ++i) {
      Mat6 w;
      if (chart) {
        double um = base->u_at(i);
        double vm = base->v_at(j) + 0.5 * base->hv;
        PointLift m = lift_point(*chart, um, vm);
        w = lw_value(m.f, m.t, m.fv, m.tv, a, b, c);
      } else {
        int k0 = L.idx(i, j), k1 = L.idx(i, j + 1);
        w = 0.5 * (lw_value(L.f[k0], L.t[k0], L.fv[k0], L.tv[k0], a, b, c) +
                   lw_value(L.f[k1], L.t[k1], L.fv[k1], L.tv[k1], a, b, c));
      }
      out.ev[out.ve(i, j)] = L.hv * w;
    }
  };
  auto vertex_vals = [&](int k) {
    out.vu[k] = lw_value(L.f[k], L.t[k], L.fu[k], L.tu[k], a, b, c);
    out.vv[k] = lw_value(L.f[k], L.t[k], L.fv[k], L.tv[k], a, b, c);
  };

  if (parallel) {
    par::for_each(L.nv, u_edge_row);
    par::for_each(L.nv - 1, v_edge_row);
    par::for_each(L.nu * L.nv, vertex_vals);
  } else {
    for (int j = 0; j < L.nv; ++j) u_edge_row(j);
    for (int j = 0; j < L.nv - 1; ++j) v_edge_row(j);
    for (int k = 0; k < L.nu * L.nv; ++k) vertex_vals(k);
  }
}

void plaquette_sums(const GaugeOneForm& eta, std::vector<Mat6>& plaq, bool parallel) {
  const int pu = eta.nu - 1;
  auto row = [&](int j) {
    for (int i = 0; i < pu; ++i) {
      plaq[i + pu * j] = eta.eu[eta.ue(i, j)] + eta.ev[eta.ve(i + 1, j)] -
                         eta.eu[eta.ue(i, j + 1)] - eta.ev[eta.ve(i, j)];
    }
  };
  if (parallel) {
    par::for_each(eta.nv - 1, row);
  } else {
    for (int j = 0; j < eta.nv - 1; ++j) row(j);
  }
}

}  // namespace kernels

GaugeOneForm middle_potential_lw(const LegendreGrid& L, double a, double b, double c) {
  if (a == 0 && b == 0 && c == 0)
    throw Error(ErrorCode::AllZeroCoefficients, "(a,b,c) = 0");
  GaugeOneForm out;
  out.nu = L.nu;
  out.nv = L.nv;
  out.hu = L.hu;
  out.hv = L.hv;
  out.eu.resize((L.nu - 1) * L.nv);
  out.ev.resize(L.nu * (L.nv - 1));
  out.vu.resize(L.nu * L.nv);
  out.vv.resize(L.nu * L.nv);
  out.is_middle_potential = true;
  kernels::lw_edges(L, a, b, c, out, parallel_enabled());
  return out;
}

std::vector<Mat6> exterior_derivative(const GaugeOneForm& eta) {
  std::vector<Mat6> plaq((eta.nu - 1) * (eta.nv - 1));
  kernels::plaquette_sums(eta, plaq, parallel_enabled());
  return plaq;
}

double max_plaquette_norm(const std::vector<Mat6>& plaq) {
  double m = 0;
  for (const Mat6& P : plaq) m = std::max(m, P.norm());
  return m;
}

double mean_plaquette_norm(const std::vector<Mat6>& plaq) {
  double s = 0;
  for (const Mat6& P : plaq) s += P.norm();
  return plaq.empty() ? 0.0 : s / plaq.size();
}

WedgeFField tau_from_lambda(const LegendreGrid& L, const std::vector<double>& lambda,
                            const std::vector<double>& dlambda_u,
                            const std::vector<double>& dlambda_v) {
  const int N = L.nu * L.nv;
  WedgeFField out;
  out.tau.resize(N);
  out.dtau_u.resize(N);
  out.dtau_v.resize(N);
  for (int k = 0; k < N; ++k) {
    Mat6 ft = wedge_m(L.f[k], L.t[k]);
    out.tau[k] = lambda[k] * ft;
    out.dtau_u[k] = dlambda_u[k] * ft +
                    lambda[k] * (wedge_m(L.fu[k], L.t[k]) + wedge_m(L.f[k], L.tu[k]));
    out.dtau_v[k] = dlambda_v[k] * ft +
                    lambda[k] * (wedge_m(L.fv[k], L.t[k]) + wedge_m(L.f[k], L.tv[k]));
  }
  return out;
}

GaugeOneForm gauge_shift(const GaugeOneForm& eta, const LegendreGrid& L,
                         const WedgeFField& tau) {
  const int N = L.nu * L.nv;
  if (static_cast<int>(tau.tau.size()) != N)
    throw Error(ErrorCode::BadParams, "tau field size mismatch");

  // every tau must be a multiple of f ^ t
  for (int k = 0; k < N; ++k) {
    Mat6 ft = wedge_m(L.f[k], L.t[k]);
    double denom = ft.squaredNorm();
    double lam = (ft.array() * tau.tau[k].array()).sum() / denom;
    double res = (tau.tau[k] - lam * ft).norm();
    if (res > 1e-8 * std::max(1.0, tau.tau[k].norm()))
      throw Error(ErrorCode::TauNotInWedgeF, "tau is not a multiple of f^t");
  }

  GaugeOneForm out = eta;
  out.is_middle_potential = false;
  for (int j = 0; j < L.nv; ++j)
    for (int i = 0; i < L.nu - 1; ++i)
      out.eu[out.ue(i, j)] -= tau.tau[L.idx(i + 1, j)] - tau.tau[L.idx(i, j)];
  for (int j = 0; j < L.nv - 1; ++j)
    for (int i = 0; i < L.nu; ++i)
      out.ev[out.ve(i, j)] -= tau.tau[L.idx(i, j + 1)] - tau.tau[L.idx(i, j)];

  bool exact = !tau.dtau_u.empty();
  if (eta.has_vertex_values()) {
    for (int j = 0; j < L.nv; ++j)
      for (int i = 0; i < L.nu; ++i) {
        int k = L.idx(i, j);
        Mat6 du, dv;
        if (exact) {
          du = tau.dtau_u[k];
          dv = tau.dtau_v[k];
        } else {  // second-order differences
          int il = std::max(i - 1, 0), ir = std::min(i + 1, L.nu - 1);
          int jl = std::max(j - 1, 0), jr = std::min(j + 1, L.nv - 1);
          du = (tau.tau[L.idx(ir, j)] - tau.tau[L.idx(il, j)]) / ((ir - il) * L.hu);
          dv = (tau.tau[L.idx(i, jr)] - tau.tau[L.idx(i, jl)]) / ((jr - jl) * L.hv);
        }
        out.vu[k] -= du;
        out.vv[k] -= dv;
      }
  }
  return out;
}

double QuadDiff::max_abs() const {
  double m = 0;
  for (double x : quu) m = std::max(m, std::abs(x));
  for (double x : quv) m = std::max(m, std::abs(x));
  for (double x : qvv) m = std::max(m, std::abs(x));
  return m;
}

SigmaField sigma_field(const LegendreGrid& L) {
  SigmaField S;
  S.nu = L.nu;
  S.nv = L.nv;
  const int N = L.nu * L.nv;
  S.s1.resize(N);
  S.s2.resize(N);
  S.d1u.resize(N);
  S.d1v.resize(N);
  S.d2u.resize(N);
  S.d2v.resize(N);
  for (int k = 0; k < N; ++k) {
    S.s1[k] = L.s1[k];
    S.s2[k] = L.s2[k];
    // the curvature multiplier derivative lands in f, which eta
    // annihilates, so it is dropped from the sigma derivatives
    S.d1u[k] = L.tu[k] + L.kappa1[k] * L.fu[k];
    S.d1v[k] = L.tv[k] + L.kappa1[k] * L.fv[k];
    S.d2u[k] = L.tu[k] + L.kappa2[k] * L.fu[k];
    S.d2v[k] = L.tv[k] + L.kappa2[k] * L.fv[k];
  }
  return S;
}

QuadDiff quadratic_differential(const SigmaField& S, const GaugeOneForm& eta) {
  const Frame& F = Frame::standard();
  QuadDiff q;
  q.nu = S.nu;
  q.nv = S.nv;
  const int N = S.nu * S.nv;
  q.quu.assign(N, 0.0);
  q.quv.assign(N, 0.0);
  q.qvv.assign(N, 0.0);

  std::vector<uint8_t> fail(S.nv, 0);
  auto row = [&](int j) {
    for (int i = 0; i < S.nu; ++i) {
      int k = i + S.nu * j;
      Eigen::Matrix<double, 6, 2> B;
      B.col(0) = S.s1[k];
      B.col(1) = S.s2[k];
      Eigen::Matrix2d BtB = B.transpose() * B;
      if (std::abs(BtB.determinant()) < 1e-14 * BtB.norm() * BtB.norm()) {
        fail[j] = 1;
        continue;
      }
      // dual frame N with (N_i, s_j) = delta_ij
      Eigen::Matrix<double, 6, 2> Nf = F.G * B * BtB.inverse();
      Mat6 au = eta.vertex_u(i, j);
      Mat6 av = eta.vertex_v(i, j);
      auto trace = [&](const Mat6& ax, const Vec6& w1, const Vec6& w2) {
        return pair(Nf.col(0), ax * w1) + pair(Nf.col(1), ax * w2);
      };
      q.quu[k] = trace(au, S.d1u[k], S.d2u[k]);
      q.qvv[k] = trace(av, S.d1v[k], S.d2v[k]);
      q.quv[k] = 0.5 * (trace(au, S.d1v[k], S.d2v[k]) + trace(av, S.d1u[k], S.d2u[k]));
    }
  };
  if (parallel_enabled()) {
    par::for_each(S.nv, row);
  } else {
    for (int j = 0; j < S.nv; ++j) row(j);
  }
  for (uint8_t f : fail)
    if (f) throw Error(ErrorCode::FrameDegenerate, "curvature sphere basis is degenerate");
  return q;
}

QuadDiff quadratic_differential(const LegendreGrid& L, const GaugeOneForm& eta) {
  return quadratic_differential(sigma_field(L), eta);
}

SeparabilityReport separability_check(const QuadDiff& q, double hu, double hv) {
  SeparabilityReport r;
  for (double x : q.quu) r.scale = std::max(r.scale, std::abs(x));
  for (double x : q.qvv) r.scale = std::max(r.scale, std::abs(x));
  if (r.scale == 0) r.scale = 1;
  auto idx = [&](int i, int j) { return i + q.nu * j; };
  for (int j = 1; j + 1 < q.nv; ++j)
    for (int i = 0; i < q.nu; ++i) {
      double d = (q.quu[idx(i, j + 1)] - q.quu[idx(i, j - 1)]) / (2 * hv);
      r.max_dv_quu = std::max(r.max_dv_quu, std::abs(d) / r.scale);
    }
  for (int j = 0; j < q.nv; ++j)
    for (int i = 1; i + 1 < q.nu; ++i) {
      double d = (q.qvv[idx(i + 1, j)] - q.qvv[idx(i - 1, j)]) / (2 * hu);
      r.max_du_qvv = std::max(r.max_du_qvv, std::abs(d) / r.scale);
    }
  return r;
}

AssociateResult combescure_associates(const SampledGrid& g, double a, double b, double c) {
  const int N = g.nu * g.nv;
  double denom_floor = 1e-8;
  AssociateResult out;
  out.xD.resize(N);
  out.xhat.resize(N);
  out.inv_kD_sum.resize(N);
  out.inv_khat_sum.resize(N);
  for (int k = 0; k < N; ++k) {
    double k1 = g.kappa1[k], k2 = g.kappa2[k];
    double K = k1 * k2;
    double dD1 = c + b * k1, dD2 = c + b * k2;
    double dh1 = a * k1 + b, dh2 = a * k2 + b;
    if (std::abs(K) < denom_floor || std::abs(k1) < denom_floor ||
        std::abs(k2) < denom_floor || std::abs(dD1) < denom_floor ||
        std::abs(dD2) < denom_floor || std::abs(dh1) < denom_floor ||
        std::abs(dh2) < denom_floor)
      throw Error(ErrorCode::AssociateSingular, "associate denominator vanishes");
    out.xD[k] = c * g.x[k] - b * g.n[k];
    out.xhat[k] = a * g.n[k] - b * g.x[k];
    // 1/kD_i = (c + b k_i)/k_i and 1/khat_i = -(a k_i + b)/k_i
    out.inv_kD_sum[k] = dD2 / K + dD1 / K;
    out.inv_khat_sum[k] = -dh1 / k1 - dh2 / k2;
    double res = out.inv_kD_sum[k] - out.inv_khat_sum[k];
    // identity: sum equals (2/K)(aK + 2bH + c), zero on the Weingarten locus
    out.eq_residual_max = std::max(out.eq_residual_max, std::abs(res));
  }
  return out;
}

}  // namespace lieapp
