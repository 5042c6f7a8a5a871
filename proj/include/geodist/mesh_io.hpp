#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "geodist/distance_map.hpp"
#include "geodist/mesh.hpp"

namespace geodist {

enum class MeshFormat { off, obj };

/// Reads an ASCII OFF or Wavefront OBJ file (v/f records, triangles only)
/// and returns the validated mesh. Throws std::runtime_error with the file
/// position or element index on parse and validation failures.
TriangleMesh load_mesh(const std::string& path, MeshFormat format);

/// Picks the format from the file extension (.off / .obj).
TriangleMesh load_mesh(const std::string& path);

/// Writes the mesh with full-precision ASCII coordinates, so that loading
/// the file back reproduces vertex positions bit-exactly.
void write_mesh(const TriangleMesh& mesh, const std::string& path, MeshFormat format);

/// Distance color ramp, bit-exact contract: u = d / d_max clamped to [0, 1]
/// (unreached vertices use u = 1), R = round(255 u),
/// G = round(255 (1 - |2u - 1|)), B = round(255 (1 - u)).
std::array<std::uint8_t, 3> distance_color(double d, double d_max);

/// Label palette: a fixed 32-bit avalanche mix of the label index, split into
/// RGB bytes, so recoloring is reproducible across platforms. Labels < 0 map
/// to mid-grey.
std::array<std::uint8_t, 3> label_color(index_t label);

/// ASCII PLY with per-vertex uchar RGB from distance_color.
void write_distance_ply(const TriangleMesh& mesh, const DistanceMap& dist, const std::string& path);

/// ASCII PLY colored by nearest-source label via label_color.
void write_label_ply(const TriangleMesh& mesh, const DistanceMap& dist, const std::string& path);

/// CSV rows "index,distance,label" with a header; distances keep full decimal
/// precision, +inf prints as "inf", missing labels print as -1.
void write_distance_csv(const DistanceMap& dist, const std::string& path);

/// Full-precision decimal formatting used by all CSV writers: round-trip
/// exact, always carries a decimal point ("0.0", "1.25", "inf").
std::string format_distance(double d);

}  // namespace geodist
