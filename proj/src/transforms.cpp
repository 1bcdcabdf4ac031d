#include "lieapp/transforms.hpp"

#include <cmath>

#include "lieapp/parallel.hpp"

namespace lieapp {

namespace {

Mat6 g_inverse(const Mat6& T) {
  const Mat6& G = Frame::standard().G;
  return G * T.transpose() * G;
}

Mat6 step(const Mat6& T, const Mat6& edge, double t) {
  Mat6 next = T * exp_skew_m(edge, t);
  if (orthogonality_defect(next) > 1e-10) next = reorthogonalize(next);
  return next;
}

// second-order finite differences of a Vec6 field along a grid direction
Vec6 fd_u(const std::vector<Vec6>& a, int nu, int nv, int i, int j, double hu) {
  auto at = [&](int ii) { return a[ii + nu * j]; };
  if (i == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * hu);
  if (i == nu - 1) return (3.0 * at(nu - 1) - 4.0 * at(nu - 2) + at(nu - 3)) / (2.0 * hu);
  return (at(i + 1) - at(i - 1)) / (2.0 * hu);
}

Vec6 fd_v(const std::vector<Vec6>& a, int nu, int nv, int i, int j, double hv) {
  auto at = [&](int jj) { return a[i + nu * jj]; };
  if (j == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * hv);
  if (j == nv - 1) return (3.0 * at(nv - 1) - 4.0 * at(nv - 2) + at(nv - 3)) / (2.0 * hv);
  return (at(j + 1) - at(j - 1)) / (2.0 * hv);
}

Vec3 fd3_u(const std::vector<Vec3>& a, int nu, int nv, int i, int j, double hu) {
  auto at = [&](int ii) { return a[ii + nu * j]; };
  if (i == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * hu);
  if (i == nu - 1) return (3.0 * at(nu - 1) - 4.0 * at(nu - 2) + at(nu - 3)) / (2.0 * hu);
  return (at(i + 1) - at(i - 1)) / (2.0 * hu);
}

Vec3 fd3_v(const std::vector<Vec3>& a, int nu, int nv, int i, int j, double hv) {
  auto at = [&](int jj) { return a[i + nu * jj]; };
  if (j == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * hv);
  if (j == nv - 1) return (3.0 * at(nv - 1) - 4.0 * at(nv - 2) + at(nv - 3)) / (2.0 * hv);
  return (at(j + 1) - at(j - 1)) / (2.0 * hv);
}

// Self-calibrating closedness witness. The finite-difference curl of the
// vertex values of eta is pure truncation noise for a closed form, so
// doubling the difference step scales it by ~4; for a genuinely non-closed
// form both steps measure the same curvature and the ratio sits near 1.
double flatness_ratio(const GaugeOneForm& eta) {
  const int nu = eta.nu, nv = eta.nv;
  if (nu < 5 || nv < 5) return 4.0;
  double sum1 = 0, sum2 = 0, vscale = 0;
  int n1 = 0, n2 = 0;
  for (int j = 0; j < nv; ++j)
    for (int i = 0; i < nu; ++i) {
      vscale = std::max({vscale, eta.vertex_u(i, j).norm(), eta.vertex_v(i, j).norm()});
    }
  auto curl = [&](int i, int j, int s) {
    Mat6 dudv = (eta.vertex_v(i + s, j) - eta.vertex_v(i - s, j)) / (2.0 * s * eta.hu);
    Mat6 dvdu = (eta.vertex_u(i, j + s) - eta.vertex_u(i, j - s)) / (2.0 * s * eta.hv);
    return (dudv - dvdu).norm();
  };
  for (int j = 1; j + 1 < nv; ++j)
    for (int i = 1; i + 1 < nu; ++i) {
      sum1 += curl(i, j, 1);
      ++n1;
    }
  for (int j = 2; j + 2 < nv; ++j)
    for (int i = 2; i + 2 < nu; ++i) {
      sum2 += curl(i, j, 2);
      ++n2;
    }
  double m1 = sum1 / std::max(n1, 1), m2 = sum2 / std::max(n2, 1);
  if (m1 < 1e-12 * std::max(1.0, vscale)) return 4.0;  // exactly closed
  return m2 / m1;
}

}  // namespace

Mat6 GaugeField::inverse_at(int k) const { return g_inverse(T[k]); }

namespace kernels {

void transport(const GaugeOneForm& eta, double t, Sweep sweep, std::vector<Mat6>& T,
               bool parallel) {
  const int nu = eta.nu, nv = eta.nv;
  auto idx = [&](int i, int j) { return i + nu * j; };
  T.assign(nu * nv, Mat6::Identity());

  if (sweep == Sweep::RowFirst) {
    for (int i = 0; i + 1 < nu; ++i)
      T[idx(i + 1, 0)] = step(T[idx(i, 0)], eta.eu[eta.ue(i, 0)], t);
    auto column = [&](int i) {
      for (int j = 0; j + 1 < nv; ++j)
        T[idx(i, j + 1)] = step(T[idx(i, j)], eta.ev[eta.ve(i, j)], t);
    };
    if (parallel) {
      par::for_each(nu, column);
    } else {
      for (int i = 0; i < nu; ++i) column(i);
    }
  } else {
    for (int j = 0; j + 1 < nv; ++j)
      T[idx(0, j + 1)] = step(T[idx(0, j)], eta.ev[eta.ve(0, j)], t);
    auto row = [&](int j) {
      for (int i = 0; i + 1 < nu; ++i)
        T[idx(i + 1, j)] = step(T[idx(i, j)], eta.eu[eta.ue(i, j)], t);
    };
    if (parallel) {
      par::for_each(nv, row);
    } else {
      for (int j = 0; j < nv; ++j) row(j);
    }
  }
}

void holonomy_defects(const GaugeOneForm& eta, double t, std::vector<double>& defect,
                      bool parallel) {
  const int pu = eta.nu - 1;
  auto row = [&](int j) {
    for (int i = 0; i < pu; ++i) {
      Mat6 H = exp_skew_m(eta.eu[eta.ue(i, j)], t) *
               exp_skew_m(eta.ev[eta.ve(i + 1, j)], t) *
               exp_skew_m(eta.eu[eta.ue(i, j + 1)], -t) *
               exp_skew_m(eta.ev[eta.ve(i, j)], -t);
      defect[i + pu * j] = (H - Mat6::Identity()).norm();
    }
  };
  if (parallel) {
    par::for_each(eta.nv - 1, row);
  } else {
    for (int j = 0; j < eta.nv - 1; ++j) row(j);
  }
}

}  // namespace kernels

GaugeField integrate_gauge(const GaugeOneForm& eta, double t, Sweep sweep) {
  GaugeField out;
  out.nu = eta.nu;
  out.nv = eta.nv;
  out.t = t;
  out.sweep = sweep;
  out.flatness_ratio = flatness_ratio(eta);
  if (t != 0.0 && out.flatness_ratio < 2.0)
    throw Error(ErrorCode::NotApproximatelyFlat,
                "curl of the potential refines like curvature, not like quadrature noise");

  kernels::transport(eta, t, sweep, out.T, parallel_enabled());
  for (const Mat6& T : out.T)
    out.max_orth_defect = std::max(out.max_orth_defect, orthogonality_defect(T));
  return out;
}

double sweep_disagreement(const GaugeOneForm& eta, double t) {
  GaugeField a = integrate_gauge(eta, t, Sweep::RowFirst);
  GaugeField b = integrate_gauge(eta, t, Sweep::ColumnFirst);
  double m = 0;
  for (size_t k = 0; k < a.T.size(); ++k) m = std::max(m, (a.T[k] - b.T[k]).norm());
  return m;
}

std::vector<double> holonomy_residual(const GaugeOneForm& eta, double t) {
  std::vector<double> defect((eta.nu - 1) * (eta.nv - 1));
  kernels::holonomy_defects(eta, t, defect, parallel_enabled());
  return defect;
}

CalapsoResult calapso_transform(const LegendreGrid& L, const GaugeOneForm& eta, double t,
                                const std::vector<PolyCQ>& cqs) {
  const int N = L.nu * L.nv;
  CalapsoResult out;
  out.t = t;
  GaugeField T = integrate_gauge(eta, t);

  out.f.resize(N);
  out.tp.resize(N);
  out.s1.resize(N);
  out.s2.resize(N);
  std::vector<Mat6> Tinv(N);
  par::for_each(N, [&](int k) {
    Tinv[k] = g_inverse(T.T[k]);
    out.f[k] = T.T[k] * L.f[k];
    out.tp[k] = T.T[k] * L.t[k];
    out.s1[k] = T.T[k] * L.s1[k];
    out.s2[k] = T.T[k] * L.s2[k];
  });

  // conjugated potential: vertex values exactly, edge integrals at midpoints
  out.eta_t.nu = L.nu;
  out.eta_t.nv = L.nv;
  out.eta_t.hu = L.hu;
  out.eta_t.hv = L.hv;
  out.eta_t.eu.resize((L.nu - 1) * L.nv);
  out.eta_t.ev.resize(L.nu * (L.nv - 1));
  out.eta_t.vu.resize(N);
  out.eta_t.vv.resize(N);
  par::for_each(N, [&](int k) {
    int i = k % L.nu, j = k / L.nu;
    out.eta_t.vu[k] = T.T[k] * eta.vertex_u(i, j) * Tinv[k];
    out.eta_t.vv[k] = T.T[k] * eta.vertex_v(i, j) * Tinv[k];
  });
  par::for_each(L.nv, [&](int j) {
    for (int i = 0; i + 1 < L.nu; ++i) {
      const Mat6& E = eta.eu[eta.ue(i, j)];
      Mat6 Tm = T.T[L.idx(i, j)] * exp_skew_m(E, 0.5 * t);  // midpoint gauge
      out.eta_t.eu[out.eta_t.ue(i, j)] = Tm * E * g_inverse(Tm);
    }
  });
  par::for_each(L.nv - 1, [&](int j) {
    for (int i = 0; i < L.nu; ++i) {
      const Mat6& E = eta.ev[eta.ve(i, j)];
      Mat6 Tm = T.T[L.idx(i, j)] * exp_skew_m(E, 0.5 * t);
      out.eta_t.ev[out.eta_t.ve(i, j)] = Tm * E * g_inverse(Tm);
    }
  });

  // quadratic differential before/after; derivatives of the transformed
  // sphere lifts come from finite differences
  out.q_before = quadratic_differential(L, eta);
  SigmaField S;
  S.nu = L.nu;
  S.nv = L.nv;
  S.s1 = out.s1;
  S.s2 = out.s2;
  S.d1u.resize(N);
  S.d1v.resize(N);
  S.d2u.resize(N);
  S.d2v.resize(N);
  par::for_each(N, [&](int k) {
    int i = k % L.nu, j = k / L.nu;
    S.d1u[k] = fd_u(out.s1, L.nu, L.nv, i, j, L.hu);
    S.d1v[k] = fd_v(out.s1, L.nu, L.nv, i, j, L.hv);
    S.d2u[k] = fd_u(out.s2, L.nu, L.nv, i, j, L.hu);
    S.d2v[k] = fd_v(out.s2, L.nu, L.nv, i, j, L.hv);
  });
  out.q_after = quadratic_differential(S, out.eta_t);
  double qscale = std::max(out.q_before.max_abs(), 1e-300);
  double dev = 0;
  for (int k = 0; k < N; ++k) {
    dev = std::max(dev, std::abs(out.q_after.quu[k] - out.q_before.quu[k]));
    dev = std::max(dev, std::abs(out.q_after.qvv[k] - out.q_before.qvv[k]));
    dev = std::max(dev, std::abs(out.q_after.quv[k] - out.q_before.quv[k]));
  }
  out.q_rel_dev = dev / qscale;

  // p^t(s) = T(t) p(s + t), coefficientwise by the binomial shift
  for (const PolyCQ& p : cqs) {
    const int d = p.degree();
    TransportedCQ tc;
    tc.cq.nu = p.nu;
    tc.cq.nv = p.nv;
    tc.cq.coeff.assign(d + 1, std::vector<Vec6>(N));
    std::vector<std::vector<double>> binom(d + 1, std::vector<double>(d + 1, 0.0));
    for (int n = 0; n <= d; ++n) {
      binom[n][0] = 1;
      for (int r = 1; r <= n; ++r)
        binom[n][r] = binom[n - 1][r - 1] + (r <= n - 1 ? binom[n - 1][r] : 0.0);
    }
    par::for_each(N, [&](int x) {
      for (int jc = 0; jc <= d; ++jc) {
        Vec6 acc = Vec6::Zero();
        double tpow = 1.0;
        for (int k = jc; k <= d; ++k) {
          acc += binom[k][jc] * tpow * p.coeff[k][x];
          tpow *= t;
        }
        tc.cq.coeff[jc][x] = T.T[x] * acc;
      }
    });
    double c0 = 0;
    for (int x = 1; x < N; ++x)
      c0 = std::max(c0, (tc.cq.coeff[0][x] - tc.cq.coeff[0][0]).norm());
    tc.constant_term_dev = c0;
    tc.report = verify_cq(out.eta_t, tc.cq);
    out.cqs.push_back(std::move(tc));
  }
  return out;
}

DarbouxResult darboux_transform(const LegendreGrid& L, const GaugeOneForm& eta, double m,
                                const Vec6& Lhat) {
  if (m == 0.0) throw Error(ErrorCode::BadParams, "Darboux parameter must be nonzero");
  if (!is_null(Lhat, 1e-8))
    throw Error(ErrorCode::BadParams, "seed line must be lightlike");
  GaugeField T = integrate_gauge(eta, m);
  const int N = L.nu * L.nv;

  DarbouxResult out;
  out.m = m;
  out.seed = Lhat;
  out.nu = L.nu;
  out.nv = L.nv;
  out.shat.resize(N);
  out.s0.resize(N);
  std::vector<double> margin(N), both_small(N);
  par::for_each(N, [&](int k) {
    Vec6 sh = g_inverse(T.T[k]) * Lhat;
    out.shat[k] = sh;
    double a1 = pair(sh, L.s1[k]) / (sh.norm() * L.s1[k].norm());
    double a2 = pair(sh, L.s2[k]) / (sh.norm() * L.s2[k].norm());
    margin[k] = std::min(std::abs(a1), std::abs(a2));
    both_small[k] = std::max(std::abs(a1), std::abs(a2));
    out.s0[k] = pair(sh, L.s2[k]) * L.s1[k] - pair(sh, L.s1[k]) * L.s2[k];
  });
  out.regularity_margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < N; ++k) {
    out.regularity_margin = std::min(out.regularity_margin, margin[k]);
    if (both_small[k] < 1e-8)
      throw Error(ErrorCode::SingularIntersection, "f is orthogonal to the parallel section");
  }
  if (out.regularity_margin < 1e-4)
    throw Error(ErrorCode::RegularityViolation,
                "seed meets a curvature sphere congruence (margin " +
                    std::to_string(out.regularity_margin) + ")");

  for (int k = 0; k < N; ++k) {
    double s = std::max({1.0, out.s0[k].squaredNorm(), out.shat[k].squaredNorm()});
    out.isotropy_max = std::max(
        {out.isotropy_max, std::abs(pair(out.s0[k], out.s0[k])) / s,
         std::abs(pair(out.shat[k], out.shat[k])) / s,
         std::abs(pair(out.s0[k], out.shat[k])) / s});
  }
  return out;
}

PolyCQ darboux_cq_transport(const DarbouxResult& dr, const LegendreGrid& L, const PolyCQ& p) {
  const int N = L.nu * L.nv;
  const int d = p.degree();
  const double m = dr.m;

  // constrained exactly when the seed is orthogonal to p(m)
  double ortho = 0;
  for (int x = 0; x < N; ++x) {
    Vec6 pm = p.eval(m, x);
    ortho = std::max(ortho,
                     std::abs(pair(pm, dr.shat[x])) / (pm.norm() * dr.shat[x].norm()));
  }
  const bool constrained = ortho < 1e-6;

  PolyCQ out;
  out.nu = p.nu;
  out.nv = p.nv;
  out.coeff.assign(d + 3, std::vector<Vec6>(N, Vec6::Zero()));

  par::for_each(N, [&](int x) {
    // s = line of f most transverse to shat, shat-dual normalized so that
    // (sigma, sigma_hat) = -1
    Vec6 sigma = pair(dr.shat[x], L.s2[x]) * L.s1[x] + pair(dr.shat[x], L.s1[x]) * L.s2[x];
    double c = pair(sigma, dr.shat[x]);
    Vec6 sigma_hat = -dr.shat[x] / c;

    std::vector<Vec6> comp_s(d + 1), comp_perp(d + 1), comp_hat(d + 1);
    std::vector<double> alpha(d + 1);  // s-component scalar polynomial
    for (int k = 0; k <= d; ++k) {
      const Vec6& pk = p.coeff[k][x];
      alpha[k] = -pair(pk, sigma_hat);
      comp_s[k] = alpha[k] * sigma;
      comp_hat[k] = -pair(pk, sigma) * sigma_hat;
      comp_perp[k] = pk - comp_s[k] - comp_hat[k];
    }

    if (!constrained) {
      // p_hat(t) = [p]_s + (1 - t/m) [p]_perp + (1 - t/m)^2 [p]_hat
      for (int k = 0; k <= d; ++k) {
        out.coeff[k][x] += comp_s[k] + comp_perp[k] + comp_hat[k];
        out.coeff[k + 1][x] += -(comp_perp[k] + 2.0 * comp_hat[k]) / m;
        out.coeff[k + 2][x] += comp_hat[k] / (m * m);
      }
    } else {
      // [p(t)]_s has a root at m; divide it out so the degree is preserved
      std::vector<double> beta(d, 0.0);
      if (d > 0) {
        beta[0] = alpha[0] / m;
        for (int k = 1; k < d; ++k) beta[k] = (alpha[k] + beta[k - 1]) / m;
      }
      for (int k = 0; k < d; ++k) out.coeff[k][x] += m * beta[k] * sigma;
      for (int k = 0; k <= d; ++k) {
        out.coeff[k][x] += comp_perp[k] + comp_hat[k];
        out.coeff[k + 1][x] += -comp_hat[k] / m;
      }
    }
  });

  // the top slots carry only the f-components of the top coefficient, which
  // vanish for genuine quantities; trim them
  double scale = 0;
  for (int k = 0; k <= out.degree(); ++k) scale = std::max(scale, out.coeff_scale(k));
  while (out.degree() > 0 && out.coeff_scale(out.degree()) <= 1e-9 * std::max(1.0, scale))
    out.coeff.pop_back();
  return out;
}

ProjectedSurface project_to_euclidean(const std::vector<Vec6>& A, const std::vector<Vec6>& B,
                                      int nu, int nv, double hu, double hv) {
  const Frame& F = Frame::standard();
  ProjectedSurface out;
  out.nu = nu;
  out.nv = nv;
  const int N = nu * nv;
  out.x.resize(N);
  out.n.resize(N);
  out.fhat.resize(N);
  out.that.resize(N);
  out.kappa1.resize(N);
  out.kappa2.resize(N);
  par::for_each(N, [&](int k) {
    auto [fh, th] = space_form_projection(A[k], B[k], F.q_inf, F.p);
    out.fhat[k] = fh;
    out.that[k] = th;
    out.x[k] = fh.head<3>();
    out.n[k] = th.head<3>();
  });
  par::for_each(N, [&](int k) {
    int i = k % nu, j = k / nu;
    Vec3 xu = fd3_u(out.x, nu, nv, i, j, hu);
    Vec3 xv = fd3_v(out.x, nu, nv, i, j, hv);
    Vec3 nu_ = fd3_u(out.n, nu, nv, i, j, hu);
    Vec3 nv_ = fd3_v(out.n, nu, nv, i, j, hv);
    out.kappa1[k] = -nu_.dot(xu) / xu.squaredNorm();
    out.kappa2[k] = -nv_.dot(xv) / xv.squaredNorm();
  });
  return out;
}

LWDarbouxResult lw_preserving_darboux(const LegendreGrid& L, const GaugeOneForm& eta,
                                      const PolyCQ& p, const PolyCQ& q, double m,
                                      double theta, double phi) {
  const Frame& F = Frame::standard();
  PencilMetrics P = pencil_metrics(p, q);
  WeingartenTensor W = weingarten_from_pencil(P, p.coeff[0][0], q.coeff[0][0]);

  LWDarbouxResult out;
  // unit-normalized coefficients keep the residual scale meaningful
  double s = std::sqrt(W.a * W.a + W.b * W.b + W.c * W.c);
  out.a = W.a / s;
  out.b = W.b / s;
  out.c = W.c / s;

  // seed from the lightcone of P(m)-perp; P(m) is parallel for d + m eta,
  // so evaluating at the basepoint pins it over the whole grid
  Vec6 pm = p.eval(m, 0);
  Vec6 qm = q.eval(m, 0);
  Eigen::Matrix<double, 2, 6> C;
  C.row(0) = (F.G * pm).transpose();
  C.row(1) = (F.G * qm).transpose();
  Eigen::FullPivLU<Eigen::Matrix<double, 2, 6>> lu(C);
  Eigen::MatrixXd ker = lu.kernel();
  if (ker.cols() < 4)
    throw Error(ErrorCode::DegeneratePair, "P(m) does not span a 2-plane");
  std::vector<Vec6> basis;
  for (int i = 0; i < ker.cols(); ++i) basis.push_back(Vec6(ker.col(i)));
  Vec6 Lhat = null_direction_in(basis, theta, phi);

  out.transform = darboux_transform(L, eta, m, Lhat);
  out.surface = project_to_euclidean(out.transform.s0, out.transform.shat, L.nu, L.nv, L.hu,
                                     L.hv);

  Mat6 BW = out.a * sym(F.q_inf, F.q_inf).B + 2.0 * out.b * sym(F.q_inf, F.p).B +
            out.c * sym(F.p, F.p).B;
  double wn = BW.norm();
  const int N = L.nu * L.nv;
  for (int k = 0; k < N; ++k) {
    double k1 = out.surface.kappa1[k], k2 = out.surface.kappa2[k];
    out.lw_residual_max = std::max(out.lw_residual_max,
                                   std::abs(out.a * k1 * k2 + out.b * (k1 + k2) + out.c));
    Vec6 sh1 = out.surface.that[k] + k1 * out.surface.fhat[k];
    Vec6 sh2 = out.surface.that[k] + k2 * out.surface.fhat[k];
    sh1.normalize();
    sh2.normalize();
    out.w_residual_max =
        std::max(out.w_residual_max, std::abs(sh1.dot(BW * sh2)) / wn);
  }

  PolyCQ phat = darboux_cq_transport(out.transform, L, p);
  PolyCQ qhat = darboux_cq_transport(out.transform, L, q);
  out.degree_p = phat.degree();
  out.degree_q = qhat.degree();
  NormPoly np0 = norm_polynomial(p), np1 = norm_polynomial(phat);
  NormPoly nq0 = norm_polynomial(q), nq1 = norm_polynomial(qhat);
  for (size_t k = 0; k < std::max(np0.coeff.size(), np1.coeff.size()); ++k) {
    double a0 = k < np0.coeff.size() ? np0.coeff[k] : 0.0;
    double a1 = k < np1.coeff.size() ? np1.coeff[k] : 0.0;
    out.norm_match_p = std::max(out.norm_match_p, std::abs(a0 - a1));
  }
  for (size_t k = 0; k < std::max(nq0.coeff.size(), nq1.coeff.size()); ++k) {
    double a0 = k < nq0.coeff.size() ? nq0.coeff[k] : 0.0;
    double a1 = k < nq1.coeff.size() ? nq1.coeff[k] : 0.0;
    out.norm_match_q = std::max(out.norm_match_q, std::abs(a0 - a1));
  }
  return out;
}

}  // namespace lieapp
