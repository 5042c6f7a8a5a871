#include "geodist/sampling.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "geodist/toplesets.hpp"

namespace geodist {

SamplingResult fps(const TriangleMesh& mesh, const Connectivity& conn, index_t m, index_t seed,
                   const PtpConfig& config) {
    const index_t n = mesh.vertex_count();
    if (m < 1 || m > n)
        throw std::invalid_argument("fps: sample count must be in [1, " + std::to_string(n) + "]");
    if (seed < 0 || seed >= n) throw std::invalid_argument("fps: seed vertex out of range");

    PtpConfig run_config = config;
    run_config.with_labels = true;

    SamplingResult result;
    result.samples.reserve(m);
    result.samples.push_back(seed);

    while (true) {
        const ToplesetOrdering ordering = compute_toplesets(conn, result.samples);
        const PtpResult run = ptp_run(mesh, conn, ordering, result.samples, run_config);

        index_t farthest = 0;
        double radius = run.distances.values[0];
        for (index_t v = 1; v < n; ++v) {
            if (run.distances.values[v] > radius) {
                radius = run.distances.values[v];
                farthest = v;
            }
        }
        const bool final_run = static_cast<index_t>(result.samples.size()) == m;
        result.history.push_back({static_cast<index_t>(result.samples.size()), ordering.rho(),
                                  run.stats.relax_calls, radius,
                                  final_run ? invalid_index : farthest});
        if (final_run) {
            result.labels = run.distances.labels;
            result.radius = radius;
            break;
        }
        result.samples.push_back(farthest);
    }
    return result;
}

std::vector<index_t> voronoi(const TriangleMesh& mesh, const Connectivity& conn,
                             std::span<const index_t> samples, const PtpConfig& config) {
    if (samples.empty()) throw std::invalid_argument("voronoi: empty sample set");
    PtpConfig run_config = config;
    run_config.with_labels = true;
    const ToplesetOrdering ordering = compute_toplesets(conn, samples);
    return ptp_run(mesh, conn, ordering, samples, run_config).distances.labels;
}

}  // namespace geodist
