#pragma once

#include <span>
#include <vector>

#include "geodist/connectivity.hpp"
#include "geodist/distance_map.hpp"
#include "geodist/mesh.hpp"
#include "geodist/ptp.hpp"

namespace geodist {

/// Mean absolute percent error of a distance map against a reference,
/// over reached non-source vertices with positive reference distance.
struct ErrorReport {
    double mape = 0.0;           // percent
    double max_rel_error = 0.0;  // percent
    std::int64_t compared = 0;
    std::int64_t excluded = 0;   // sources, unreached, non-positive reference
};

ErrorReport mape(const DistanceMap& approx, std::span<const double> exact);

/// Exact geodesics on flat meshes (z = 0): straight-line distance to the
/// nearest source.
std::vector<double> analytic_grid_distance(const TriangleMesh& mesh, index_t source);
std::vector<double> analytic_grid_distance(const TriangleMesh& mesh,
                                           std::span<const index_t> sources);

/// Exact geodesics on the unit sphere: great-circle arc to the nearest
/// source (positions are normalized before the dot product).
std::vector<double> analytic_sphere_distance(const TriangleMesh& mesh, index_t source);
std::vector<double> analytic_sphere_distance(const TriangleMesh& mesh,
                                             std::span<const index_t> sources);

/// MAPE against the reference after every iteration k in [rho, K] of one
/// solver run at the given threshold.
struct ConvergencePoint {
    int k;
    double mape;
};
std::vector<ConvergencePoint> convergence_curve(const TriangleMesh& mesh, const Connectivity& conn,
                                                std::span<const index_t> sources,
                                                std::span<const double> exact, double epsilon,
                                                int workers = 0);

/// Empirical checks of the topleset-count and iteration-count bounds.
struct ToplesetFixRow {
    index_t r;
    int fixed_at;      // last iteration any vertex of V_r moved by >= epsilon relative
    int bound;         // ceil((max_degree - 3) / 2) * (r - 1) + 1
    index_t max_degree;
    bool ok;
};

struct BoundReport {
    index_t n = 0;
    index_t rho = 0;
    int iterations = 0;  // K
    index_t max_degree = 0;
    double rho_over_sqrt_n = 0.0;
    double iterations_over_rho = 0.0;  // K / rho
    double rho_over_log2_n = 0.0;
    bool rho_upper_ok = false;   // rho <= 2 sqrt(n)
    bool iterations_ok = false;  // K / rho <= 2
    int log_base = 0;            // b = max_degree - 4 (0 when < 2: bound not applicable)
    double log_b_n = 0.0;
    bool rho_lower_ok = true;    // rho >= log_b(n) whenever b >= 2
    std::vector<ToplesetFixRow> per_topleset;
    bool fix_bounds_ok = true;   // all per-topleset rows ok

    bool all_ok() const { return rho_upper_ok && iterations_ok && rho_lower_ok && fix_bounds_ok; }
};

/// Runs the solver with tracing from the given sources and evaluates every
/// bound. A vertex counts as still changing while its relative move per
/// iteration is at least the run's epsilon threshold.
BoundReport bound_suite(const TriangleMesh& mesh, const Connectivity& conn,
                        std::span<const index_t> sources, const PtpConfig& config = {});

}  // namespace geodist
