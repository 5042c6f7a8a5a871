#pragma once

#include <cstdint>
#include <span>

#include "geodist/connectivity.hpp"
#include "geodist/distance_map.hpp"
#include "geodist/mesh.hpp"

namespace geodist {

struct FmStats {
    std::int64_t relax_calls = 0;
    std::int64_t degenerate_calls = 0;
    std::int64_t pops = 0;
    double wall_seconds = 0.0;
};

struct FmResult {
    DistanceMap distances;
    FmStats stats;
};

/// Priority-queue fast marching over the mesh, single-threaded. Each settled
/// vertex re-relaxes its non-settled neighbors over their full incident
/// triangle fans. The sequence of settled keys is checked to be
/// non-decreasing.
FmResult fm_run(const TriangleMesh& mesh, const Connectivity& conn,
                std::span<const index_t> sources);

/// Shortest paths on the edge graph with Euclidean edge lengths; upper
/// bounds any surface geodesic and serves as the exact baseline on path-like
/// configurations.
DistanceMap dijkstra_run(const TriangleMesh& mesh, const Connectivity& conn,
                         std::span<const index_t> sources);

/// Total planar_update invocations per solver for identical inputs, the
/// hardware-independent stand-in for speedup measurements.
struct RelaxCounts {
    std::int64_t ptp = 0;
    std::int64_t fm = 0;
};
RelaxCounts relax_count_comparison(const TriangleMesh& mesh, const Connectivity& conn,
                                   std::span<const index_t> sources, double epsilon = 1e-3);

}  // namespace geodist
