#pragma once

// Shared helpers for the test suites: brute-force oracles that deliberately
// avoid the library's connectivity and solver code paths, plus small file
// fixtures.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "geodist/mesh.hpp"

namespace testsupport {

using geodist::index_t;
using geodist::TriangleMesh;
using geodist::Vec3;

// Adjacency lists built by a plain scan of the face list.
inline std::vector<std::vector<index_t>> brute_force_adjacency(const TriangleMesh& mesh) {
    std::vector<std::set<index_t>> sets(mesh.vertex_count());
    for (const auto& tri : mesh.faces) {
        for (int c = 0; c < 3; ++c) {
            sets[tri[c]].insert(tri[(c + 1) % 3]);
            sets[tri[c]].insert(tri[(c + 2) % 3]);
        }
    }
    std::vector<std::vector<index_t>> adjacency(mesh.vertex_count());
    for (size_t v = 0; v < sets.size(); ++v) adjacency[v].assign(sets[v].begin(), sets[v].end());
    return adjacency;
}

// Hop distance to the nearest source over the edge graph; -1 if unreachable.
inline std::vector<index_t> brute_force_bfs(const TriangleMesh& mesh,
                                            const std::vector<index_t>& sources) {
    const auto adjacency = brute_force_adjacency(mesh);
    std::vector<index_t> hops(mesh.vertex_count(), -1);
    std::queue<index_t> queue;
    for (const index_t s : sources) {
        hops[s] = 0;
        queue.push(s);
    }
    while (!queue.empty()) {
        const index_t v = queue.front();
        queue.pop();
        for (const index_t u : adjacency[v]) {
            if (hops[u] == -1) {
                hops[u] = hops[v] + 1;
                queue.push(u);
            }
        }
    }
    return hops;
}

// Faces incident to v by scanning the face list.
inline std::vector<index_t> brute_force_incident_faces(const TriangleMesh& mesh, index_t v) {
    std::vector<index_t> faces;
    for (index_t f = 0; f < mesh.face_count(); ++f) {
        const auto& tri = mesh.faces[f];
        if (tri[0] == v || tri[1] == v || tri[2] == v) faces.push_back(f);
    }
    return faces;
}

// Largest interior angle over all faces, in radians.
inline double max_face_angle(const TriangleMesh& mesh) {
    double worst = 0.0;
    for (const auto& tri : mesh.faces) {
        for (int c = 0; c < 3; ++c) {
            const Vec3 a = mesh.vertices[tri[c]];
            const Vec3 b = mesh.vertices[tri[(c + 1) % 3]];
            const Vec3 d = mesh.vertices[tri[(c + 2) % 3]];
            const Vec3 u = b - a, w = d - a;
            worst = std::max(worst, std::acos(dot(u, w) / (norm(u) * norm(w))));
        }
    }
    return worst;
}

class TempDir {
public:
    TempDir() {
        root_ = std::filesystem::temp_directory_path() /
                ("geodist_test_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(root_);
    }
    ~TempDir() { std::filesystem::remove_all(root_); }
    std::string path(const std::string& name) const { return (root_ / name).string(); }

private:
    std::filesystem::path root_;
};

inline std::string write_file(const TempDir& dir, const std::string& name,
                              const std::string& content) {
    const std::string path = dir.path(name);
    std::ofstream out(path);
    out << content;
    return path;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// A single unit right triangle in the plane.
inline TriangleMesh single_triangle() {
    TriangleMesh mesh;
    mesh.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    mesh.faces = {{0, 1, 2}};
    return mesh;
}

}  // namespace testsupport
