#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "geodist/connectivity.hpp"
#include "geodist/distance_map.hpp"
#include "geodist/mesh.hpp"
#include "geodist/ptp.hpp"

namespace geodist {

/// Cost record of one farthest-point iteration: the distance map computed
/// from `sources` samples, whose maximum (the covering radius of that sample
/// set) selects the next sample.
struct FpsIterationStat {
    index_t sources;
    index_t rho;
    std::int64_t relax_calls;
    double radius;
    index_t picked;  // invalid_index on the final labeling run
};

struct SamplingResult {
    std::vector<index_t> samples;  // insertion order, samples[0] == seed
    std::vector<index_t> labels;   // nearest-sample index per vertex
    double radius = 0.0;           // covering radius of the full sample set
    std::vector<FpsIterationStat> history;
};

/// Farthest point sampling: starting from the seed, repeatedly runs the
/// solver from the whole current sample set and appends the vertex with the
/// largest distance (ties broken toward the lowest index). A final run from
/// all m samples produces the Voronoi labels and the covering radius.
SamplingResult fps(const TriangleMesh& mesh, const Connectivity& conn, index_t m, index_t seed = 0,
                   const PtpConfig& config = {});

/// Nearest-sample label per vertex from one multi-source solver run.
std::vector<index_t> voronoi(const TriangleMesh& mesh, const Connectivity& conn,
                             std::span<const index_t> samples, const PtpConfig& config = {});

}  // namespace geodist
