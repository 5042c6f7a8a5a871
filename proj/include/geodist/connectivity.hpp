#pragma once

#include <map>
#include <vector>

#include "geodist/mesh.hpp"

namespace geodist {

/// Compact half-edge connectivity. Half-edge 3*f + c runs from corner c to
/// corner (c+1)%3 of face f, so origin and next are implicit; only the twin
/// table and one outgoing half-edge per vertex are stored. Boundary
/// half-edges have twin == invalid_index.
///
/// Requires a manifold mesh (every edge shared by at most two faces with
/// opposite orientation); build_connectivity reports violations.
class Connectivity {
public:
    Connectivity() = default;

    index_t halfedge_count() const { return static_cast<index_t>(twin_.size()); }
    index_t vertex_count() const { return static_cast<index_t>(vertex_halfedge_.size()); }

    index_t face(index_t he) const { return he / 3; }
    index_t next(index_t he) const { return 3 * (he / 3) + (he % 3 + 1) % 3; }
    index_t prev(index_t he) const { return 3 * (he / 3) + (he % 3 + 2) % 3; }
    index_t twin(index_t he) const { return twin_[he]; }
    index_t origin(index_t he) const { return origin_[he]; }
    index_t target(index_t he) const { return origin_[next(he)]; }
    index_t halfedge(index_t v) const { return vertex_halfedge_[v]; }

    /// Visits every incident face of v once, in rotational order, passing the
    /// other two vertices of the face as (origin(next), origin(prev)).
    /// For boundary vertices the walk covers the full open fan.
    template <typename Fn>  // Fn(index_t v1, index_t v2, index_t face)
    void for_each_incident_triangle(index_t v, Fn&& fn) const {
        const index_t h0 = vertex_halfedge_[v];
        if (h0 == invalid_index) return;
        index_t h = h0;
        do {
            fn(target(h), origin(prev(h)), face(h));
            h = twin(prev(h));
        } while (h != invalid_index && h != h0);
    }

    /// Neighbors of v in rotational order (face-degree + 1 of them for
    /// boundary vertices, face-degree for interior ones).
    std::vector<index_t> neighbors(index_t v) const;

    /// Number of edges incident to v (graph degree).
    index_t degree(index_t v) const;

    bool is_boundary_vertex(index_t v) const {
        const index_t h = vertex_halfedge_[v];
        return h != invalid_index && twin_[h] == invalid_index;
    }

    friend Connectivity build_connectivity(const TriangleMesh& mesh);

private:
    std::vector<index_t> origin_;
    std::vector<index_t> twin_;
    std::vector<index_t> vertex_halfedge_;
};

/// Builds half-edge tables for a validated mesh. Throws std::runtime_error
/// naming the edge endpoints on a non-manifold edge, or the vertex on a
/// non-manifold (multi-fan) vertex.
Connectivity build_connectivity(const TriangleMesh& mesh);

/// (neighbor, incident face) pairs around v in rotational order. Boundary
/// fans report one more neighbor than faces; the extra neighbor carries the
/// face it closes against.
struct VertexStar {
    std::vector<index_t> neighbors;
    std::vector<index_t> faces;
};
VertexStar vertex_star(const Connectivity& conn, index_t v);

/// Degree -> vertex count over the whole mesh; counts sum to |vertices|.
std::map<index_t, index_t> degree_histogram(const Connectivity& conn);

}  // namespace geodist
