#pragma once

#include <string>

#include <json.hpp>

#include "lieapp/surfaces.hpp"

namespace lieapp {

/// JSON grid schema, version 1:
/// { schema_version, nu, nv, u_range: [u0,u1], v_range: [v0,v1],
///   fields: { x, n, kappa1, kappa2, xu?, xv?, nu?, nv? } }
/// with row-major flat arrays of 64-bit floats (vertex index i + nu*j,
/// vector fields interleaved xyz). Serialization round-trips bitwise.
nlohmann::json grid_to_json(const SampledGrid& g);

/// Parses and validates a grid; runs the geometric invariant checks
/// (unit normal, Rodrigues when partials are present) at tolerance 1e-4.
/// Throws SchemaError / GeometryError.
SampledGrid grid_from_json(const nlohmann::json& j);

SampledGrid ingest(const std::string& path);
void export_grid(const SampledGrid& g, const std::string& path);

/// Quad-mesh OBJ with vertex normals.
void write_obj(const std::string& path, const std::vector<Vec3>& x,
               const std::vector<Vec3>& n, int nu, int nv);

}  // namespace lieapp
