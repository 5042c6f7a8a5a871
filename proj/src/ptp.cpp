#include "geodist/ptp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "geodist/update_kernel.hpp"

namespace geodist {

std::pair<index_t, index_t> band_boundaries(int k, index_t prev_i, index_t rho, bool converged_front) {
    const index_t j = k < rho ? static_cast<index_t>(k) : rho - 1;
    const index_t i = converged_front ? prev_i + 1 : prev_i;
    return {i, j};
}

namespace {

int resolve_workers(int requested) {
#ifdef _OPENMP
    return requested > 0 ? requested : omp_get_max_threads();
#else
    (void)requested;
    return 1;
#endif
}

// Relative change of one vertex between iterations, with the guards the
// band-retirement rule needs: inf -> inf counts as 0, inf -> finite as inf,
// and a zero denominator is replaced by the smallest positive normal value.
template <typename T>
inline T relative_change(T before, T after) {
    constexpr T inf = std::numeric_limits<T>::infinity();
    if (before == inf) return after == inf ? T(0) : inf;
    const T denom = before == T(0) ? std::numeric_limits<T>::min() : before;
    return std::abs(after - before) / denom;
}

template <typename T>
PtpResult run_impl(const TriangleMesh& mesh, const Connectivity& conn,
                   const ToplesetOrdering& ordering, std::span<const index_t> sources,
                   const PtpConfig& config, const IterationObserver& observer) {
    constexpr T inf = std::numeric_limits<T>::infinity();
    const index_t n = mesh.vertex_count();
    const index_t rho = ordering.rho();
    const T eps = static_cast<T>(config.epsilon);
    const int workers = resolve_workers(config.workers);

    std::vector<Vec3T<T>> positions(n);
    for (index_t v = 0; v < n; ++v) {
        positions[v] = {static_cast<T>(mesh.vertices[v].x), static_cast<T>(mesh.vertices[v].y),
                        static_cast<T>(mesh.vertices[v].z)};
    }

    std::vector<T> dist[2];
    dist[0].assign(n, inf);
    dist[1].assign(n, inf);
    // Nearest-source labels are tracked even when the caller does not want
    // them: the relaxation needs them to keep planar solves within one wave.
    std::vector<index_t> labels[2];
    labels[0].assign(n, invalid_index);
    labels[1].assign(n, invalid_index);
    for (size_t si = 0; si < sources.size(); ++si) {
        const index_t s = sources[si];
        dist[0][s] = dist[1][s] = T(0);
        labels[0][s] = labels[1][s] = static_cast<index_t>(si);
    }

    PtpResult result;
    if (config.record_trace) result.trace.last_change.assign(n, 0);

    const auto t_begin = std::chrono::steady_clock::now();
    int prev = 0, curr = 1;
    index_t i = 1;
    int k = 0;
    while (i <= rho - 1) {
        ++k;
        const index_t j = band_boundaries(k, i, rho, false).second;
        const index_t band_begin = ordering.limits[i];
        const index_t band_end = ordering.limits[j + 1];
        const index_t front_end = ordering.limits[i + 1];

        const T* d_prev = dist[prev].data();
        T* d_curr = dist[curr].data();
        const index_t* l_prev = labels[prev].data();
        index_t* l_curr = labels[curr].data();

        T max_rel = T(0);
        std::int64_t calls = 0, degenerate = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(workers) \
    reduction(max : max_rel) reduction(+ : calls, degenerate)
#endif
        for (index_t p = band_begin; p < band_end; ++p) {
            const index_t v = ordering.sorted[p];
            const RelaxResult<T> relax = relax_vertex<T>(v, conn, positions.data(), d_prev, l_prev);
            d_curr[v] = relax.value;
            l_curr[v] = relax.label;
            calls += relax.update_calls;
            degenerate += relax.degenerate_calls;
            if (p < front_end) max_rel = std::max(max_rel, relative_change(d_prev[v], relax.value));
            if (config.record_trace && relative_change(d_prev[v], relax.value) >= eps)
                result.trace.last_change[v] = k;
        }

        result.stats.relax_calls += calls;
        result.stats.degenerate_calls += degenerate;
        const bool converged = max_rel < eps;
        if (config.record_trace)
            result.trace.rows.push_back(
                {k, i, j, band_end - band_begin, static_cast<double>(max_rel), converged});
        if (observer) {
            if constexpr (std::is_same_v<T, double>) observer(k, std::span<const double>(dist[curr]));
        }
        if (converged) {
            // Freeze the retiring topleset in both buffers; later iterations
            // read its final values regardless of buffer parity.
            for (index_t p = band_begin; p < front_end; ++p) {
                const index_t v = ordering.sorted[p];
                dist[prev][v] = d_curr[v];
                labels[prev][v] = l_curr[v];
            }
            ++i;
        }
        std::swap(prev, curr);
    }
    result.trace.iterations = k;
    result.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
    result.stats.epsilon = config.epsilon;
    result.stats.workers = workers;

    DistanceMap& map = result.distances;
    map.values.resize(n);
    // After the last retirement both buffers agree on every reachable vertex.
    for (index_t v = 0; v < n; ++v) map.values[v] = static_cast<double>(dist[prev][v]);
    if (config.with_labels) map.labels = std::move(labels[prev]);
    map.sources.assign(sources.begin(), sources.end());
    map.precision = config.precision;
    map.unreached = ordering.unreached;
    return result;
}

}  // namespace

PtpResult ptp_run(const TriangleMesh& mesh, const Connectivity& conn,
                  const ToplesetOrdering& ordering, std::span<const index_t> sources,
                  const PtpConfig& config, const IterationObserver& observer) {
    if (sources.empty()) throw std::invalid_argument("ptp_run: empty source set");
    if (!(config.epsilon > 0)) throw std::invalid_argument("ptp_run: epsilon must be positive");
    if (static_cast<index_t>(mesh.vertices.size()) != static_cast<index_t>(ordering.position.size()))
        throw std::invalid_argument("ptp_run: ordering built for a different mesh");
    // The first topleset must be exactly the source set.
    if (ordering.limits.size() < 2 ||
        ordering.limits[1] != static_cast<index_t>(sources.size()))
        throw std::invalid_argument("ptp_run: ordering does not match the source set");
    for (const index_t s : sources) {
        if (s < 0 || s >= mesh.vertex_count() || ordering.position[s] == invalid_index ||
            ordering.position[s] >= ordering.limits[1])
            throw std::invalid_argument("ptp_run: ordering does not match the source set");
    }

    if (config.precision == Precision::single_fp)
        return run_impl<float>(mesh, conn, ordering, sources, config, observer);
    return run_impl<double>(mesh, conn, ordering, sources, config, observer);
}

double iteration_bound_check(const BandTrace& trace, const ToplesetOrdering& ordering) {
    return static_cast<double>(trace.iterations) / static_cast<double>(ordering.rho());
}

}  // namespace geodist
