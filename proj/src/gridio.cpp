#include "lieapp/gridio.hpp"

#include <cmath>
#include <fstream>

namespace lieapp {

namespace {

nlohmann::json flat3(const std::vector<Vec3>& v) {
  std::vector<double> out;
  out.reserve(3 * v.size());
  for (const Vec3& p : v) {
    out.push_back(p.x());
    out.push_back(p.y());
    out.push_back(p.z());
  }
  return nlohmann::json(out);
}

std::vector<Vec3> unflat3(const nlohmann::json& j, size_t n, const char* field) {
  if (!j.is_array() || j.size() != 3 * n)
    throw Error(ErrorCode::SchemaError, std::string(field) + " must hold 3*nu*nv floats");
  std::vector<Vec3> out(n);
  for (size_t k = 0; k < n; ++k) {
    out[k] = Vec3(j[3 * k].get<double>(), j[3 * k + 1].get<double>(),
                  j[3 * k + 2].get<double>());
    if (!out[k].allFinite())
      throw Error(ErrorCode::SchemaError, std::string(field) + " has non-finite entries");
  }
  return out;
}

std::vector<double> unflat1(const nlohmann::json& j, size_t n, const char* field) {
  if (!j.is_array() || j.size() != n)
    throw Error(ErrorCode::SchemaError, std::string(field) + " must hold nu*nv floats");
  std::vector<double> out(n);
  for (size_t k = 0; k < n; ++k) {
    out[k] = j[k].get<double>();
    if (!std::isfinite(out[k]))
      throw Error(ErrorCode::SchemaError, std::string(field) + " has non-finite entries");
  }
  return out;
}

}  // namespace

nlohmann::json grid_to_json(const SampledGrid& g) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["nu"] = g.nu;
  j["nv"] = g.nv;
  j["u_range"] = {g.u0, g.u1};
  j["v_range"] = {g.v0, g.v1};
  nlohmann::json f;
  f["x"] = flat3(g.x);
  f["n"] = flat3(g.n);
  f["kappa1"] = nlohmann::json(g.kappa1);
  f["kappa2"] = nlohmann::json(g.kappa2);
  if (g.has_partials) {
    f["xu"] = flat3(g.x_u);
    f["xv"] = flat3(g.x_v);
    f["nu"] = flat3(g.n_u);
    f["nv"] = flat3(g.n_v);
  }
  j["fields"] = std::move(f);
  return j;
}

SampledGrid grid_from_json(const nlohmann::json& j) {
  for (const char* key : {"schema_version", "nu", "nv", "u_range", "v_range", "fields"})
    if (!j.contains(key))
      throw Error(ErrorCode::SchemaError, std::string("missing key ") + key);
  if (j["schema_version"].get<int>() != 1)
    throw Error(ErrorCode::SchemaError, "unsupported schema_version");

  SampledGrid g;
  g.nu = j["nu"].get<int>();
  g.nv = j["nv"].get<int>();
  if (g.nu < 8 || g.nv < 8) throw Error(ErrorCode::SchemaError, "grid must be at least 8x8");
  g.u0 = j["u_range"][0].get<double>();
  g.u1 = j["u_range"][1].get<double>();
  g.v0 = j["v_range"][0].get<double>();
  g.v1 = j["v_range"][1].get<double>();
  g.hu = (g.u1 - g.u0) / (g.nu - 1);
  g.hv = (g.v1 - g.v0) / (g.nv - 1);

  const auto& f = j["fields"];
  const size_t N = static_cast<size_t>(g.nu) * g.nv;
  for (const char* key : {"x", "n", "kappa1", "kappa2"})
    if (!f.contains(key))
      throw Error(ErrorCode::SchemaError, std::string("missing field ") + key);
  g.x = unflat3(f["x"], N, "x");
  g.n = unflat3(f["n"], N, "n");
  g.kappa1 = unflat1(f["kappa1"], N, "kappa1");
  g.kappa2 = unflat1(f["kappa2"], N, "kappa2");
  g.has_partials = f.contains("xu") && f.contains("xv") && f.contains("nu") && f.contains("nv");
  if (g.has_partials) {
    g.x_u = unflat3(f["xu"], N, "xu");
    g.x_v = unflat3(f["xv"], N, "xv");
    g.n_u = unflat3(f["nu"], N, "nu");
    g.n_v = unflat3(f["nv"], N, "nv");
  }
  g.provenance = "file";

  check_grid(g, 1e-4, true);

  double kmax = 0;
  for (size_t k = 0; k < N; ++k)
    kmax = std::max({kmax, std::abs(g.kappa1[k]), std::abs(g.kappa2[k])});
  double eps = 1e-6 * std::max(kmax, 1e-300);
  g.umbilic_free.resize(N);
  int free_count = 0;
  for (size_t k = 0; k < N; ++k) {
    g.umbilic_free[k] = std::abs(g.kappa1[k] - g.kappa2[k]) > eps ? 1 : 0;
    free_count += g.umbilic_free[k];
  }
  if (free_count == 0) throw Error(ErrorCode::UmbilicEverywhere, "ingested grid");
  return g;
}

SampledGrid ingest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SchemaError, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaError, e.what());
  }
  return grid_from_json(j);
}

void export_grid(const SampledGrid& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::BadConfig, "cannot write " + path);
  out << grid_to_json(g).dump(2) << "\n";
}

void write_obj(const std::string& path, const std::vector<Vec3>& x,
               const std::vector<Vec3>& n, int nu, int nv) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::BadConfig, "cannot write " + path);
  out.precision(17);
  for (const Vec3& p : x) out << "v " << p.x() << " " << p.y() << " " << p.z() << "\n";
  for (const Vec3& p : n) out << "vn " << p.x() << " " << p.y() << " " << p.z() << "\n";
  auto id = [&](int i, int j) { return 1 + i + nu * j; };
  for (int j = 0; j + 1 < nv; ++j)
    for (int i = 0; i + 1 < nu; ++i) {
      int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      out << "f " << a << "//" << a << " " << b << "//" << b << " " << c << "//" << c << " "
          << d << "//" << d << "\n";
    }
}

}  // namespace lieapp
