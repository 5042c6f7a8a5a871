#pragma once

#include <array>
#include <vector>

#include "geodist/vec3.hpp"

namespace geodist {

/// Indexed triangle mesh. Faces are triples of vertex indices with
/// counter-clockwise orientation defining the surface normal.
struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<index_t, 3>> faces;

    index_t vertex_count() const { return static_cast<index_t>(vertices.size()); }
    index_t face_count() const { return static_cast<index_t>(faces.size()); }
};

/// Throws std::runtime_error naming the offending element when the mesh has
/// an out-of-range face index, a face with repeated indices, or an edge whose
/// endpoints coincide.
void validate_mesh(const TriangleMesh& mesh);

/// Planar nx-by-ny vertex grid at unit spacing, vertex (i, j) placed at
/// (i + shear * j, j, 0), each quad split along its (i,j)-(i+1,j+1) diagonal.
/// shear = 0 yields right triangles; |shear| >= 1 yields obtuse triangles.
TriangleMesh generate_grid(index_t nx, index_t ny, double shear = 0.0);

/// Unit sphere approximated by subdividing an icosahedron `subdiv` times
/// (20 * 4^subdiv faces); every vertex lies on the unit sphere.
TriangleMesh generate_icosphere(int subdiv);

}  // namespace geodist
