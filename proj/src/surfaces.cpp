#include "lieapp/surfaces.hpp"

#include <algorithm>
#include <cmath>

#include "lieapp/parallel.hpp"

namespace lieapp {

namespace {

double get_param(const std::map<std::string, double>& params, const std::string& key,
                 double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

// x = (cosh u cos v, cosh u sin v, u); minimal, k1 = -k2 = -sech^2 u.
struct Catenoid final : SurfaceChart {
  std::string name() const override { return "catenoid"; }
  Vec3 x(double u, double v) const override {
    return {std::cosh(u) * std::cos(v), std::cosh(u) * std::sin(v), u};
  }
  Vec3 xu(double u, double v) const override {
    return {std::sinh(u) * std::cos(v), std::sinh(u) * std::sin(v), 1.0};
  }
  Vec3 xv(double u, double v) const override {
    return {-std::cosh(u) * std::sin(v), std::cosh(u) * std::cos(v), 0.0};
  }
  Vec3 n(double u, double v) const override {
    double s = 1.0 / std::cosh(u);
    return {-std::cos(v) * s, -std::sin(v) * s, std::tanh(u)};
  }
  Vec3 nu(double u, double v) const override {
    double s2 = 1.0 / (std::cosh(u) * std::cosh(u));
    return s2 * xu(u, v);
  }
  Vec3 nv(double u, double v) const override {
    double s = 1.0 / std::cosh(u);
    return {std::sin(v) * s, -std::cos(v) * s, 0.0};
  }
  double kappa1(double u, double) const override {
    return -1.0 / (std::cosh(u) * std::cosh(u));
  }
  double kappa2(double u, double) const override {
    return 1.0 / (std::cosh(u) * std::cosh(u));
  }
  std::pair<double, double> extent_u() const override { return {-1.0, 1.0}; }
  std::pair<double, double> extent_v() const override { return {0.0, M_PI}; }
  std::vector<double> lw_triple() const override { return {0, 1, 0}; }
};

// x = ((R + r cos u) cos v, (R + r cos u) sin v, r sin u); inward normal,
// k1 = 1/r along the tube, k2 = cos u / (R + r cos u).
struct Torus final : SurfaceChart {
  double R, r;
  Torus(double R_, double r_) : R(R_), r(r_) {}
  std::string name() const override { return "torus"; }
  double rho(double u) const { return R + r * std::cos(u); }
  Vec3 x(double u, double v) const override {
    return {rho(u) * std::cos(v), rho(u) * std::sin(v), r * std::sin(u)};
  }
  Vec3 xu(double u, double v) const override {
    return {-r * std::sin(u) * std::cos(v), -r * std::sin(u) * std::sin(v), r * std::cos(u)};
  }
  Vec3 xv(double u, double v) const override {
    return {-rho(u) * std::sin(v), rho(u) * std::cos(v), 0.0};
  }
  Vec3 n(double u, double v) const override {
    return {-std::cos(u) * std::cos(v), -std::cos(u) * std::sin(v), -std::sin(u)};
  }
  Vec3 nu(double u, double v) const override {
    return {std::sin(u) * std::cos(v), std::sin(u) * std::sin(v), -std::cos(u)};
  }
  Vec3 nv(double u, double v) const override {
    return {std::cos(u) * std::sin(v), -std::cos(u) * std::cos(v), 0.0};
  }
  double kappa1(double, double) const override { return 1.0 / r; }
  double kappa2(double u, double) const override { return std::cos(u) / rho(u); }
  std::pair<double, double> extent_u() const override { return {-1.2, 1.2}; }
  std::pair<double, double> extent_v() const override { return {0.0, M_PI}; }
  std::vector<double> lw_triple() const override { return {r * r, -r, 1}; }
};

// x = (r cos u, r sin u, v); k1 = -1/r, k2 = 0 along the ruling.
struct Cylinder final : SurfaceChart {
  double r;
  explicit Cylinder(double r_) : r(r_) {}
  std::string name() const override { return "cylinder"; }
  Vec3 x(double u, double v) const override { return {r * std::cos(u), r * std::sin(u), v}; }
  Vec3 xu(double u, double) const override { return {-r * std::sin(u), r * std::cos(u), 0.0}; }
  Vec3 xv(double, double) const override { return {0.0, 0.0, 1.0}; }
  Vec3 n(double u, double) const override { return {std::cos(u), std::sin(u), 0.0}; }
  Vec3 nu(double u, double) const override { return {-std::sin(u), std::cos(u), 0.0}; }
  Vec3 nv(double, double) const override { return Vec3::Zero(); }
  double kappa1(double, double) const override { return -1.0 / r; }
  double kappa2(double, double) const override { return 0.0; }
  std::pair<double, double> extent_u() const override { return {0.0, M_PI}; }
  std::pair<double, double> extent_v() const override { return {0.0, 2.0}; }
  std::vector<double> lw_triple() const override { return {r * r, r, 1}; }
};

// Tractroid x = (sech u cos v, sech u sin v, u - tanh u), u > 0; K = -1 with
// k1 = -1/sinh u, k2 = sinh u.
struct Pseudosphere final : SurfaceChart {
  std::string name() const override { return "pseudosphere"; }
  Vec3 x(double u, double v) const override {
    double s = 1.0 / std::cosh(u);
    return {s * std::cos(v), s * std::sin(v), u - std::tanh(u)};
  }
  Vec3 xu(double u, double v) const override {
    double s = 1.0 / std::cosh(u), t = std::tanh(u);
    return {-s * t * std::cos(v), -s * t * std::sin(v), t * t};
  }
  Vec3 xv(double u, double v) const override {
    double s = 1.0 / std::cosh(u);
    return {-s * std::sin(v), s * std::cos(v), 0.0};
  }
  Vec3 n(double u, double v) const override {
    double s = 1.0 / std::cosh(u), t = std::tanh(u);
    return {-t * std::cos(v), -t * std::sin(v), -s};
  }
  Vec3 nu(double u, double v) const override {
    double s = 1.0 / std::cosh(u), t = std::tanh(u);
    return {-s * s * std::cos(v), -s * s * std::sin(v), s * t};
  }
  Vec3 nv(double u, double v) const override {
    double t = std::tanh(u);
    return {t * std::sin(v), -t * std::cos(v), 0.0};
  }
  double kappa1(double u, double) const override { return -1.0 / std::sinh(u); }
  double kappa2(double u, double) const override { return std::sinh(u); }
  std::pair<double, double> extent_u() const override { return {0.5, 2.0}; }
  std::pair<double, double> extent_v() const override { return {0.0, M_PI}; }
  std::vector<double> lw_triple() const override { return {1, 0, 1}; }
};

// Delaunay unduloid with mean curvature H and neck radius r1 < 1/(2H).
// The profile runs from the bulge (phi = 0) at constant speed r1 + r2:
//   rho(phi)^2 = r1^2 sin^2 + r2^2 cos^2,   z = r2 E(phi,e) + r1 F(phi,e),
// with e^2 = 1 - r1^2/r2^2. Only z needs elliptic integrals; all derivatives
// are algebraic, so the Rodrigues residuals stay at machine precision.
struct Unduloid final : SurfaceChart {
  double H, r1, r2;
  Unduloid(double H_, double neck) : H(H_), r1(neck), r2(1.0 / H_ - neck) {}
  std::string name() const override { return "unduloid"; }
  double rho(double u) const {
    double s = std::sin(u), c = std::cos(u);
    return std::sqrt(r1 * r1 * s * s + r2 * r2 * c * c);
  }
  double drho(double u) const {
    return (r1 * r1 - r2 * r2) * std::sin(u) * std::cos(u) / rho(u);
  }
  double dz(double u) const {
    double p = rho(u);
    return p + r1 * r2 / p;
  }
  double z(double u) const {
    double e = std::sqrt(1.0 - (r1 * r1) / (r2 * r2));
    return r2 * std::ellint_2(e, u) + r1 * std::ellint_1(e, u);
  }
  Vec3 x(double u, double v) const override {
    double p = rho(u);
    return {p * std::cos(v), p * std::sin(v), z(u)};
  }
  Vec3 xu(double u, double v) const override {
    double dp = drho(u);
    return {dp * std::cos(v), dp * std::sin(v), dz(u)};
  }
  Vec3 xv(double u, double v) const override {
    double p = rho(u);
    return {-p * std::sin(v), p * std::cos(v), 0.0};
  }
  Vec3 n(double u, double v) const override {
    double w = r1 + r2;  // |(drho, dz)|
    return {-dz(u) * std::cos(v) / w, -dz(u) * std::sin(v) / w, drho(u) / w};
  }
  Vec3 nu(double u, double v) const override {
    double w = r1 + r2;
    double p = rho(u), dp = drho(u);
    double d2z = dp * (p * p - r1 * r2) / (p * p);
    double d2rho = -(p * p * p * p - r1 * r1 * r2 * r2) / (p * p * p);
    return {-d2z * std::cos(v) / w, -d2z * std::sin(v) / w, d2rho / w};
  }
  Vec3 nv(double u, double v) const override {
    double w = r1 + r2;
    return {dz(u) * std::sin(v) / w, -dz(u) * std::cos(v) / w, 0.0};
  }
  double kappa1(double u, double) const override {
    double p2 = rho(u) * rho(u);
    return (p2 - r1 * r2) / (p2 * (r1 + r2));
  }
  double kappa2(double u, double) const override {
    double p2 = rho(u) * rho(u);
    return (p2 + r1 * r2) / (p2 * (r1 + r2));
  }
  std::pair<double, double> extent_u() const override {
    // stay on the bulge side of rho^2 = r1 r2 so the meridian curvature
    // keeps its sign (the associate-surface denominators need it)
    double ustar = std::acos(std::sqrt(r1 / (r1 + r2)));
    return {0.1 * ustar, 0.9 * ustar};
  }
  std::pair<double, double> extent_v() const override { return {0.0, M_PI}; }
  std::vector<double> lw_triple() const override { return {0, 1, -2 * H}; }
};

// Totally umbilic fixture; sample() must reject it.
struct Sphere final : SurfaceChart {
  double r;
  explicit Sphere(double r_) : r(r_) {}
  std::string name() const override { return "sphere"; }
  Vec3 x(double u, double v) const override {
    return {r * std::sin(u) * std::cos(v), r * std::sin(u) * std::sin(v), r * std::cos(u)};
  }
  Vec3 xu(double u, double v) const override {
    return {r * std::cos(u) * std::cos(v), r * std::cos(u) * std::sin(v), -r * std::sin(u)};
  }
  Vec3 xv(double u, double v) const override {
    return {-r * std::sin(u) * std::sin(v), r * std::sin(u) * std::cos(v), 0.0};
  }
  Vec3 n(double u, double v) const override { return x(u, v) / r; }
  Vec3 nu(double u, double v) const override { return xu(u, v) / r; }
  Vec3 nv(double u, double v) const override { return xv(u, v) / r; }
  double kappa1(double, double) const override { return -1.0 / r; }
  double kappa2(double, double) const override { return -1.0 / r; }
  std::pair<double, double> extent_u() const override { return {0.3, M_PI - 0.3}; }
  std::pair<double, double> extent_v() const override { return {0.0, M_PI}; }
};

}  // namespace

std::unique_ptr<SurfaceChart> catalog(const std::string& name,
                                      const std::map<std::string, double>& params) {
  if (name == "catenoid") return std::make_unique<Catenoid>();
  if (name == "torus") {
    double R = get_param(params, "R", 2.0), r = get_param(params, "r", 1.0);
    if (!(R > 0) || !(r > 0) || r >= R)
      throw Error(ErrorCode::BadParams, "torus needs 0 < r < R");
    return std::make_unique<Torus>(R, r);
  }
  if (name == "cylinder") {
    double r = get_param(params, "r", 1.0);
    if (!(r > 0)) throw Error(ErrorCode::BadParams, "cylinder needs r > 0");
    return std::make_unique<Cylinder>(r);
  }
  if (name == "pseudosphere") return std::make_unique<Pseudosphere>();
  if (name == "unduloid") {
    double H = get_param(params, "H", 1.0), neck = get_param(params, "neck", 0.3);
    if (!(H > 0) || !(neck > 0) || !(neck < 0.5 / H))
      throw Error(ErrorCode::BadParams, "unduloid needs H > 0 and 0 < neck < 1/(2H)");
    return std::make_unique<Unduloid>(H, neck);
  }
  if (name == "sphere") {
    double r = get_param(params, "r", 1.0);
    if (!(r > 0)) throw Error(ErrorCode::BadParams, "sphere needs r > 0");
    return std::make_unique<Sphere>(r);
  }
  throw Error(ErrorCode::UnknownSurface, name);
}

int SampledGrid::umbilic_free_count() const {
  int c = 0;
  for (uint8_t m : umbilic_free) c += m;
  return c;
}

namespace kernels {

void sample_rows(const SurfaceChart& chart, SampledGrid& g, bool parallel) {
  auto row = [&](int j) {
    double v = g.v_at(j);
    for (int i = 0; i < g.nu; ++i) {
      double u = g.u_at(i);
      int k = g.idx(i, j);
      g.x[k] = chart.x(u, v);
      g.n[k] = chart.n(u, v);
      g.x_u[k] = chart.xu(u, v);
      g.x_v[k] = chart.xv(u, v);
      g.n_u[k] = chart.nu(u, v);
      g.n_v[k] = chart.nv(u, v);
      g.kappa1[k] = chart.kappa1(u, v);
      g.kappa2[k] = chart.kappa2(u, v);
    }
  };
  if (parallel) {
    par::for_each(g.nv, row);
  } else {
    for (int j = 0; j < g.nv; ++j) row(j);
  }
}

}  // namespace kernels

SampledGrid sample(std::shared_ptr<const SurfaceChart> chart, int nu, int nv) {
  if (nu < 8 || nv < 8) throw Error(ErrorCode::BadParams, "grid must be at least 8x8");
  SampledGrid g;
  g.nu = nu;
  g.nv = nv;
  std::tie(g.u0, g.u1) = chart->extent_u();
  std::tie(g.v0, g.v1) = chart->extent_v();
  g.hu = (g.u1 - g.u0) / (nu - 1);
  g.hv = (g.v1 - g.v0) / (nv - 1);
  const int N = nu * nv;
  g.x.resize(N);
  g.n.resize(N);
  g.x_u.resize(N);
  g.x_v.resize(N);
  g.n_u.resize(N);
  g.n_v.resize(N);
  g.kappa1.resize(N);
  g.kappa2.resize(N);
  g.has_partials = true;
  g.provenance = "analytic";
  g.chart = chart;

  kernels::sample_rows(*chart, g, parallel_enabled());

  double kmax = 0;
  for (int k = 0; k < N; ++k)
    kmax = std::max({kmax, std::abs(g.kappa1[k]), std::abs(g.kappa2[k])});
  double eps = 1e-6 * std::max(kmax, 1e-300);
  g.umbilic_free.resize(N);
  int free_count = 0;
  for (int k = 0; k < N; ++k) {
    g.umbilic_free[k] = std::abs(g.kappa1[k] - g.kappa2[k]) > eps ? 1 : 0;
    free_count += g.umbilic_free[k];
  }
  if (free_count == 0)
    throw Error(ErrorCode::UmbilicEverywhere, chart->name() + " has no umbilic-free vertex");
  return g;
}

GridCheck check_grid(const SampledGrid& g, double tol, bool throw_on_fail) {
  GridCheck c;
  const int N = g.nu * g.nv;
  for (int k = 0; k < N; ++k) {
    c.max_unit_normal_dev = std::max(c.max_unit_normal_dev, std::abs(g.n[k].norm() - 1.0));
    if (g.has_partials) {
      c.max_tangency = std::max({c.max_tangency, std::abs(g.n[k].dot(g.x_u[k])),
                                 std::abs(g.n[k].dot(g.x_v[k]))});
      c.max_rodrigues =
          std::max({c.max_rodrigues, (g.n_u[k] + g.kappa1[k] * g.x_u[k]).norm(),
                    (g.n_v[k] + g.kappa2[k] * g.x_v[k]).norm()});
    }
  }
  if (throw_on_fail && (c.max_unit_normal_dev > tol || c.max_rodrigues > tol))
    throw Error(ErrorCode::GeometryError, "grid violates normal/Rodrigues invariants");
  return c;
}

}  // namespace lieapp
