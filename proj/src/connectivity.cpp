#include "geodist/connectivity.hpp"

#include <stdexcept>
#include <string>
#include <unordered_map>

namespace geodist {

namespace {

// Directed edge key (origin, target) packed into 64 bits.
inline std::uint64_t edge_key(index_t a, index_t b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

}  // namespace

Connectivity build_connectivity(const TriangleMesh& mesh) {
    validate_mesh(mesh);

    Connectivity conn;
    const index_t nv = mesh.vertex_count();
    const index_t nhe = 3 * mesh.face_count();
    conn.origin_.resize(nhe);
    for (index_t f = 0; f < mesh.face_count(); ++f)
        for (int c = 0; c < 3; ++c) conn.origin_[3 * f + c] = mesh.faces[f][c];
    conn.twin_.assign(nhe, invalid_index);
    conn.vertex_halfedge_.assign(nv, invalid_index);

    std::unordered_map<std::uint64_t, index_t> directed;
    directed.reserve(nhe);
    for (index_t he = 0; he < nhe; ++he) {
        const index_t o = conn.origin(he), t = conn.target(he);
        if (!directed.emplace(edge_key(o, t), he).second)
            throw std::runtime_error("non-manifold edge (" + std::to_string(o) + ", " +
                                     std::to_string(t) + "): same orientation appears twice");
        if (conn.vertex_halfedge_[o] == invalid_index) conn.vertex_halfedge_[o] = he;
    }
    for (index_t he = 0; he < nhe; ++he) {
        const auto it = directed.find(edge_key(conn.target(he), conn.origin(he)));
        conn.twin_[he] = it == directed.end() ? invalid_index : it->second;
    }

    // Rotate each boundary vertex's outgoing half-edge to the fan start so a
    // single (twin, prev) walk covers the whole open fan.
    std::vector<index_t> star_faces(nv, 0);
    for (index_t v = 0; v < nv; ++v) {
        index_t h = conn.vertex_halfedge_[v];
        if (h == invalid_index) continue;
        const index_t h0 = h;
        index_t guard = 0;
        while (conn.twin_[h] != invalid_index) {
            h = conn.next(conn.twin_[h]);
            if (h == h0) break;
            if (++guard > nhe)
                throw std::runtime_error("non-manifold vertex " + std::to_string(v) +
                                         ": star is not a single fan");
        }
        conn.vertex_halfedge_[v] = h;
        index_t count = 0;
        index_t w = h;
        do {
            ++count;
            w = conn.twin_[conn.prev(w)];
        } while (w != invalid_index && w != h);
        star_faces[v] = count;
    }

    // A fan walk must reach every incident face, otherwise two fans meet at
    // the vertex (bowtie configuration).
    std::vector<index_t> incident(nv, 0);
    for (const auto& tri : mesh.faces)
        for (const index_t v : tri) ++incident[v];
    for (index_t v = 0; v < nv; ++v) {
        if (incident[v] != star_faces[v])
            throw std::runtime_error("non-manifold vertex " + std::to_string(v) +
                                     ": star is not a single fan");
    }
    return conn;
}

std::vector<index_t> Connectivity::neighbors(index_t v) const {
    std::vector<index_t> out;
    const index_t h0 = vertex_halfedge_[v];
    if (h0 == invalid_index) return out;
    index_t h = h0;
    index_t last = invalid_index;
    do {
        out.push_back(target(h));
        last = h;
        h = twin(prev(h));
    } while (h != invalid_index && h != h0);
    if (h == invalid_index) out.push_back(origin(prev(last)));  // open fan: closing neighbor
    return out;
}

index_t Connectivity::degree(index_t v) const {
    const index_t h0 = vertex_halfedge_[v];
    if (h0 == invalid_index) return 0;
    index_t faces = 0;
    index_t h = h0;
    do {
        ++faces;
        h = twin(prev(h));
    } while (h != invalid_index && h != h0);
    return h == invalid_index ? faces + 1 : faces;
}

VertexStar vertex_star(const Connectivity& conn, index_t v) {
    if (v < 0 || v >= conn.vertex_count()) throw std::invalid_argument("vertex_star: index out of range");
    VertexStar star;
    conn.for_each_incident_triangle(v, [&](index_t v1, index_t v2, index_t f) {
        star.neighbors.push_back(v1);
        star.faces.push_back(f);
        (void)v2;
    });
    // Boundary fans end with one extra neighbor not covered by an own face.
    const auto all = conn.neighbors(v);
    if (all.size() > star.neighbors.size()) star.neighbors.push_back(all.back());
    return star;
}

std::map<index_t, index_t> degree_histogram(const Connectivity& conn) {
    std::map<index_t, index_t> hist;
    for (index_t v = 0; v < conn.vertex_count(); ++v) ++hist[conn.degree(v)];
    return hist;
}

}  // namespace geodist
