#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lieapp/minkowski.hpp"

namespace lieapp {

/// Analytic surface patch in curvature-line coordinates: position, unit
/// normal, principal curvatures and first-order partials in closed form.
/// The normal is x_u x x_v normalized; curvature signs follow the Rodrigues
/// equations n_u + k1 x_u = 0, n_v + k2 x_v = 0.
struct SurfaceChart {
  virtual ~SurfaceChart() = default;

  virtual std::string name() const = 0;

  virtual Vec3 x(double u, double v) const = 0;
  virtual Vec3 xu(double u, double v) const = 0;
  virtual Vec3 xv(double u, double v) const = 0;
  virtual Vec3 n(double u, double v) const = 0;
  virtual Vec3 nu(double u, double v) const = 0;
  virtual Vec3 nv(double u, double v) const = 0;
  virtual double kappa1(double u, double v) const = 0;
  virtual double kappa2(double u, double v) const = 0;

  virtual std::pair<double, double> extent_u() const = 0;
  virtual std::pair<double, double> extent_v() const = 0;

  /// Orientation-dependent linear Weingarten triple when the chart satisfies
  /// one, empty otherwise. Documented per chart.
  virtual std::vector<double> lw_triple() const { return {}; }
};

/// catenoid | torus (R,r) | cylinder (r) | pseudosphere | unduloid (H,neck)
/// | sphere (r).  The sphere is a deliberately umbilic fixture used to
/// exercise the UmbilicEverywhere path.
std::unique_ptr<SurfaceChart> catalog(const std::string& name,
                                      const std::map<std::string, double>& params = {});

struct SampledGrid {
  int nu = 0, nv = 0;
  double u0 = 0, u1 = 0, v0 = 0, v1 = 0;
  double hu = 0, hv = 0;

  std::vector<Vec3> x, n;
  std::vector<Vec3> x_u, x_v, n_u, n_v;
  std::vector<double> kappa1, kappa2;
  std::vector<uint8_t> umbilic_free;  // |k1-k2| > eps_umb
  bool has_partials = false;
  std::string provenance;  // "analytic" | "file"

  std::shared_ptr<const SurfaceChart> chart;  // set for analytic grids

  int idx(int i, int j) const { return i + nu * j; }
  double u_at(int i) const { return u0 + hu * i; }
  double v_at(int j) const { return v0 + hv * j; }
  int umbilic_free_count() const;
};

/// Fills a grid from the chart evaluators; throws UmbilicEverywhere when no
/// vertex clears the umbilic threshold eps = 1e-6 * max|kappa|.
SampledGrid sample(std::shared_ptr<const SurfaceChart> chart, int nu, int nv);

/// Runs the chart invariants over a grid. Throws GeometryError when the
/// normal is far from unit or a Rodrigues residual exceeds `tol`.
struct GridCheck {
  double max_unit_normal_dev = 0;
  double max_tangency = 0;   // |(n, x_u)|, |(n, x_v)|
  double max_rodrigues = 0;  // |n_u + k1 x_u|, |n_v + k2 x_v|
};
GridCheck check_grid(const SampledGrid& g, double tol = 1e-4, bool throw_on_fail = true);

}  // namespace lieapp
