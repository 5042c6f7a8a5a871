#pragma once

#include <span>
#include <vector>

#include "geodist/connectivity.hpp"
#include "geodist/mesh.hpp"

namespace geodist {

/// Topological level sets: vertices grouped by hop distance to the source
/// set, V_0 being the sources themselves. `sorted` lists the reachable
/// vertices level by level (ascending index inside each level); level r
/// occupies sorted[limits[r] .. limits[r+1]). `position[v]` is v's slot in
/// `sorted`, or invalid_index for vertices the sources cannot reach.
struct ToplesetOrdering {
    std::vector<index_t> sorted;
    std::vector<index_t> limits;
    std::vector<index_t> position;
    index_t unreached = 0;

    index_t rho() const { return static_cast<index_t>(limits.size()) - 1; }
    index_t reachable() const { return static_cast<index_t>(sorted.size()); }
    index_t level_size(index_t r) const { return limits[r + 1] - limits[r]; }

    /// Level index of vertex v, or invalid_index if unreachable. O(log rho).
    index_t level_of(index_t v) const;
};

/// Breadth-first level sets over the edge graph from a non-empty duplicate-free
/// source set. Unreachable vertices are excluded and counted, not an error.
ToplesetOrdering compute_toplesets(const Connectivity& conn, std::span<const index_t> sources);

/// Mesh with vertices permuted into topleset order: vertex sorted[p] of the
/// original mesh becomes vertex p. Unreachable vertices keep their relative
/// order after the reachable block. Solvers running on the permuted mesh
/// produce bit-identical distance maps once mapped back through old_of_new.
struct BandReordered {
    TriangleMesh mesh;
    Connectivity conn;
    ToplesetOrdering ordering;       // identity permutation over the same levels
    std::vector<index_t> old_of_new;
    std::vector<index_t> new_of_old;
};
BandReordered reorder_for_bands(const TriangleMesh& mesh, const Connectivity& conn,
                                const ToplesetOrdering& ordering);

enum class SequenceClass { increasing, stationary, decreasing };

/// A maximal run of consecutive levels whose size deltas share one sign.
struct SequenceSegment {
    index_t start;  // first level of the run
    index_t end;    // last level of the run (inclusive)
    SequenceClass cls;
};

/// Splits levels [0, rho) into contiguous increasing / stationary /
/// decreasing runs by the sign of |V_r| - |V_{r-1}|. Requires rho >= 2.
std::vector<SequenceSegment> classify_sequences(const ToplesetOrdering& ordering);

/// |V_0|, |V_1|, ..., |V_{rho-1}|.
std::vector<index_t> topleset_histogram(const ToplesetOrdering& ordering);

const char* to_string(SequenceClass cls);

}  // namespace geodist
