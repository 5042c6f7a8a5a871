#include "geodist/mesh.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace geodist {

void validate_mesh(const TriangleMesh& mesh) {
    const index_t nv = mesh.vertex_count();
    for (index_t v = 0; v < nv; ++v) {
        if (!is_finite(mesh.vertices[v]))
            throw std::runtime_error("vertex " + std::to_string(v) + " has non-finite coordinates");
    }
    for (index_t f = 0; f < mesh.face_count(); ++f) {
        const auto& tri = mesh.faces[f];
        for (int c = 0; c < 3; ++c) {
            if (tri[c] < 0 || tri[c] >= nv)
                throw std::runtime_error("face " + std::to_string(f) + ": vertex index " +
                                         std::to_string(tri[c]) + " out of range (mesh has " +
                                         std::to_string(nv) + " vertices)");
        }
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
            throw std::runtime_error("face " + std::to_string(f) + " repeats a vertex index");
        for (int c = 0; c < 3; ++c) {
            const index_t a = tri[c], b = tri[(c + 1) % 3];
            if (mesh.vertices[a] == mesh.vertices[b])
                throw std::runtime_error("face " + std::to_string(f) + ": zero-length edge (" +
                                         std::to_string(a) + ", " + std::to_string(b) + ")");
        }
    }
}

TriangleMesh generate_grid(index_t nx, index_t ny, double shear) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("generate_grid: nx and ny must be >= 2");

    TriangleMesh mesh;
    mesh.vertices.reserve(static_cast<size_t>(nx) * ny);
    for (index_t j = 0; j < ny; ++j)
        for (index_t i = 0; i < nx; ++i)
            mesh.vertices.push_back({i + shear * j, static_cast<double>(j), 0.0});

    mesh.faces.reserve(2 * static_cast<size_t>(nx - 1) * (ny - 1));
    const auto at = [nx](index_t i, index_t j) { return j * nx + i; };
    for (index_t j = 0; j + 1 < ny; ++j) {
        for (index_t i = 0; i + 1 < nx; ++i) {
            const index_t a = at(i, j), b = at(i + 1, j);
            const index_t c = at(i + 1, j + 1), d = at(i, j + 1);
            mesh.faces.push_back({a, b, c});
            mesh.faces.push_back({a, c, d});
        }
    }
    return mesh;
}

namespace {

index_t midpoint_vertex(TriangleMesh& mesh, std::map<std::pair<index_t, index_t>, index_t>& cache,
                        index_t a, index_t b) {
    const auto key = std::minmax(a, b);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    Vec3 m = mesh.vertices[a] + mesh.vertices[b];
    m = (1.0 / norm(m)) * m;
    const index_t v = mesh.vertex_count();
    mesh.vertices.push_back(m);
    cache.emplace(key, v);
    return v;
}

}  // namespace

TriangleMesh generate_icosphere(int subdiv) {
    if (subdiv < 0) throw std::invalid_argument("generate_icosphere: subdiv must be >= 0");

    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    const double s = 1.0 / std::sqrt(1.0 + phi * phi);
    const double a = s, b = phi * s;

    TriangleMesh mesh;
    mesh.vertices = {{-a, b, 0},  {a, b, 0},  {-a, -b, 0}, {a, -b, 0}, {0, -a, b},  {0, a, b},
                     {0, -a, -b}, {0, a, -b}, {b, 0, -a},  {b, 0, a},  {-b, 0, -a}, {-b, 0, a}};
    mesh.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},
                  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},   {3, 4, 2},
                  {3, 2, 6},  {3, 6, 8},  {3, 8, 9},   {4, 9, 5},  {2, 4, 11},  {6, 2, 10},
                  {8, 6, 7},  {9, 8, 1}};

    for (int level = 0; level < subdiv; ++level) {
        std::map<std::pair<index_t, index_t>, index_t> midpoints;
        std::vector<std::array<index_t, 3>> refined;
        refined.reserve(mesh.faces.size() * 4);
        for (const auto& tri : mesh.faces) {
            const index_t ab = midpoint_vertex(mesh, midpoints, tri[0], tri[1]);
            const index_t bc = midpoint_vertex(mesh, midpoints, tri[1], tri[2]);
            const index_t ca = midpoint_vertex(mesh, midpoints, tri[2], tri[0]);
            refined.push_back({tri[0], ab, ca});
            refined.push_back({tri[1], bc, ab});
            refined.push_back({tri[2], ca, bc});
            refined.push_back({ab, bc, ca});
        }
        mesh.faces = std::move(refined);
    }
    return mesh;
}

}  // namespace geodist
