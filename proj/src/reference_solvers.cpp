#include "geodist/reference_solvers.hpp"

#include <chrono>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "geodist/ptp.hpp"
#include "geodist/update_kernel.hpp"

namespace geodist {

namespace {

enum class FrontState : unsigned char { far, red, black };

using HeapEntry = std::pair<double, index_t>;  // (tentative distance, vertex)
using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>>;

void check_sources(const TriangleMesh& mesh, std::span<const index_t> sources) {
    if (sources.empty()) throw std::invalid_argument("empty source set");
    for (const index_t s : sources) {
        if (s < 0 || s >= mesh.vertex_count())
            throw std::invalid_argument("source index " + std::to_string(s) + " out of range");
    }
}

}  // namespace

FmResult fm_run(const TriangleMesh& mesh, const Connectivity& conn,
                std::span<const index_t> sources) {
    check_sources(mesh, sources);
    const index_t n = mesh.vertex_count();
    const auto t_begin = std::chrono::steady_clock::now();

    FmResult result;
    std::vector<double>& dist = result.distances.values;
    dist.assign(n, infinite_distance);
    std::vector<FrontState> state(n, FrontState::far);
    // labels keep multi-source planar solves within one wave, as in ptp_run
    std::vector<index_t> labels(n, invalid_index);
    MinHeap heap;
    for (size_t si = 0; si < sources.size(); ++si) {
        dist[sources[si]] = 0.0;
        labels[sources[si]] = static_cast<index_t>(si);
        state[sources[si]] = FrontState::red;
        heap.push({0.0, sources[si]});
    }

    double last_key = 0.0;
    while (!heap.empty()) {
        const auto [key, v] = heap.top();
        heap.pop();
        if (state[v] == FrontState::black || key != dist[v]) continue;  // stale entry
        state[v] = FrontState::black;
        ++result.stats.pops;
        if (key < last_key)
            throw std::logic_error("fm_run: settled keys are not non-decreasing");
        last_key = key;

        for (const index_t v0 : conn.neighbors(v)) {
            if (state[v0] == FrontState::black) continue;
            const RelaxResult<double> relax = relax_vertex<double>(
                v0, conn, mesh.vertices.data(), dist.data(), labels.data());
            result.stats.relax_calls += relax.update_calls;
            result.stats.degenerate_calls += relax.degenerate_calls;
            if (relax.value < dist[v0]) {
                dist[v0] = relax.value;
                labels[v0] = relax.label;
                state[v0] = FrontState::red;
                heap.push({relax.value, v0});
            }
        }
    }

    result.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
    result.distances.sources.assign(sources.begin(), sources.end());
    result.distances.precision = Precision::double_fp;
    for (const double d : dist)
        if (d == infinite_distance) ++result.distances.unreached;
    return result;
}

DistanceMap dijkstra_run(const TriangleMesh& mesh, const Connectivity& conn,
                         std::span<const index_t> sources) {
    check_sources(mesh, sources);
    const index_t n = mesh.vertex_count();

    DistanceMap map;
    map.values.assign(n, infinite_distance);
    map.sources.assign(sources.begin(), sources.end());
    std::vector<bool> settled(n, false);
    MinHeap heap;
    for (const index_t s : sources) {
        map.values[s] = 0.0;
        heap.push({0.0, s});
    }
    while (!heap.empty()) {
        const auto [key, v] = heap.top();
        heap.pop();
        if (settled[v]) continue;
        settled[v] = true;
        for (const index_t u : conn.neighbors(v)) {
            if (settled[u]) continue;
            const double candidate = key + norm(mesh.vertices[u] - mesh.vertices[v]);
            if (candidate < map.values[u]) {
                map.values[u] = candidate;
                heap.push({candidate, u});
            }
        }
    }
    for (const double d : map.values)
        if (d == infinite_distance) ++map.unreached;
    return map;
}

RelaxCounts relax_count_comparison(const TriangleMesh& mesh, const Connectivity& conn,
                                   std::span<const index_t> sources, double epsilon) {
    RelaxCounts counts;
    PtpConfig config;
    config.epsilon = epsilon;
    const ToplesetOrdering ordering = compute_toplesets(conn, sources);
    counts.ptp = ptp_run(mesh, conn, ordering, sources, config).stats.relax_calls;
    counts.fm = fm_run(mesh, conn, sources).stats.relax_calls;
    return counts;
}

}  // namespace geodist
