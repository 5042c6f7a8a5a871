#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "geodist/connectivity.hpp"
#include "geodist/distance_map.hpp"
#include "geodist/mesh.hpp"
#include "geodist/toplesets.hpp"

namespace geodist {

struct PtpConfig {
    double epsilon = 1e-3;  // relative-change threshold retiring the front topleset
    Precision precision = Precision::double_fp;
    int workers = 0;  // 0 = all hardware threads
    bool record_trace = false;
    bool with_labels = false;
};

/// One iteration of the band schedule. updated counts the vertices relaxed
/// (the band size); max_rel_change is taken over the front topleset V_i only.
struct BandRow {
    int k;
    index_t i;
    index_t j;
    std::int64_t updated;
    double max_rel_change;
    bool front_converged;
};

struct BandTrace {
    std::vector<BandRow> rows;
    int iterations = 0;  // K
    /// Last iteration at which each vertex changed by at least epsilon
    /// relative (with inf -> finite counting as a change); only filled when
    /// record_trace is set. 0 for sources and untouched vertices.
    std::vector<int> last_change;
};

struct PtpStats {
    std::int64_t relax_calls = 0;       // planar_update invocations
    std::int64_t degenerate_calls = 0;  // fallback-only triangles encountered
    double wall_seconds = 0.0;
    double epsilon = 0.0;
    int workers = 1;
};

struct PtpResult {
    DistanceMap distances;
    BandTrace trace;
    PtpStats stats;
};

/// Band boundaries for iteration k: j_k tracks the breadth-first frontier
/// (j = k capped at rho - 1) while i_k advances past the front topleset only
/// once its relative change drops below the threshold.
std::pair<index_t, index_t> band_boundaries(int k, index_t prev_i, index_t rho, bool converged_front);

/// Observes the complete distance snapshot after each iteration (double
/// precision runs only).
using IterationObserver = std::function<void(int k, std::span<const double> distances)>;

/// Parallel toplesets propagation: banded, double-buffered relaxation over
/// the topleset ordering. Each iteration reads only the previous buffer and
/// writes only the current one, so results are bit-identical for any worker
/// count. Vertices outside the reachable component stay at +inf.
PtpResult ptp_run(const TriangleMesh& mesh, const Connectivity& conn,
                  const ToplesetOrdering& ordering, std::span<const index_t> sources,
                  const PtpConfig& config = {}, const IterationObserver& observer = {});

/// K / rho for a completed run; values above 2 exceed the expected
/// convergence regime and are flagged by the diagnostics report.
double iteration_bound_check(const BandTrace& trace, const ToplesetOrdering& ordering);

}  // namespace geodist
