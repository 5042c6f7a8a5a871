#include "geodist/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "geodist/toplesets.hpp"

namespace geodist {

ErrorReport mape(const DistanceMap& approx, std::span<const double> exact) {
    if (approx.values.size() != exact.size())
        throw std::invalid_argument("mape: reference size mismatch");

    std::vector<bool> is_source(approx.values.size(), false);
    for (const index_t s : approx.sources) is_source[s] = true;

    ErrorReport report;
    double sum = 0.0;
    for (size_t v = 0; v < exact.size(); ++v) {
        if (is_source[v] || !std::isfinite(approx.values[v]) || !(exact[v] > 0.0)) {
            ++report.excluded;
            continue;
        }
        const double rel = std::abs(approx.values[v] - exact[v]) / exact[v];
        sum += rel;
        report.max_rel_error = std::max(report.max_rel_error, 100.0 * rel);
        ++report.compared;
    }
    if (report.compared == 0) throw std::runtime_error("mape: no comparable vertices");
    report.mape = 100.0 * sum / static_cast<double>(report.compared);
    return report;
}

std::vector<double> analytic_grid_distance(const TriangleMesh& mesh,
                                           std::span<const index_t> sources) {
    std::vector<double> reference(mesh.vertex_count(), infinite_distance);
    for (index_t v = 0; v < mesh.vertex_count(); ++v) {
        for (const index_t s : sources)
            reference[v] = std::min(reference[v], norm(mesh.vertices[v] - mesh.vertices[s]));
    }
    return reference;
}

std::vector<double> analytic_grid_distance(const TriangleMesh& mesh, index_t source) {
    return analytic_grid_distance(mesh, std::span<const index_t>(&source, 1));
}

std::vector<double> analytic_sphere_distance(const TriangleMesh& mesh,
                                             std::span<const index_t> sources) {
    std::vector<double> reference(mesh.vertex_count(), infinite_distance);
    for (index_t v = 0; v < mesh.vertex_count(); ++v) {
        const Vec3 p = (1.0 / norm(mesh.vertices[v])) * mesh.vertices[v];
        for (const index_t s : sources) {
            const Vec3 q = (1.0 / norm(mesh.vertices[s])) * mesh.vertices[s];
            const double c = std::clamp(dot(p, q), -1.0, 1.0);
            reference[v] = std::min(reference[v], std::acos(c));
        }
    }
    return reference;
}

std::vector<double> analytic_sphere_distance(const TriangleMesh& mesh, index_t source) {
    return analytic_sphere_distance(mesh, std::span<const index_t>(&source, 1));
}

std::vector<ConvergencePoint> convergence_curve(const TriangleMesh& mesh, const Connectivity& conn,
                                                std::span<const index_t> sources,
                                                std::span<const double> exact, double epsilon,
                                                int workers) {
    const ToplesetOrdering ordering = compute_toplesets(conn, sources);
    const index_t rho = ordering.rho();

    PtpConfig config;
    config.epsilon = epsilon;
    config.workers = workers;

    std::vector<ConvergencePoint> curve;
    DistanceMap snapshot;
    snapshot.sources.assign(sources.begin(), sources.end());
    const IterationObserver observer = [&](int k, std::span<const double> values) {
        if (k < rho) return;
        snapshot.values.assign(values.begin(), values.end());
        curve.push_back({k, mape(snapshot, exact).mape});
    };
    ptp_run(mesh, conn, ordering, sources, config, observer);
    return curve;
}

BoundReport bound_suite(const TriangleMesh& mesh, const Connectivity& conn,
                        std::span<const index_t> sources, const PtpConfig& config) {
    const ToplesetOrdering ordering = compute_toplesets(conn, sources);
    PtpConfig run_config = config;
    run_config.record_trace = true;
    const PtpResult run = ptp_run(mesh, conn, ordering, sources, run_config);

    BoundReport report;
    report.n = mesh.vertex_count();
    report.rho = ordering.rho();
    report.iterations = run.trace.iterations;
    for (index_t v = 0; v < conn.vertex_count(); ++v)
        report.max_degree = std::max(report.max_degree, conn.degree(v));

    const double sqrt_n = std::sqrt(static_cast<double>(report.n));
    report.rho_over_sqrt_n = report.rho / sqrt_n;
    report.iterations_over_rho = static_cast<double>(report.iterations) / report.rho;
    report.rho_over_log2_n = report.rho / std::log2(static_cast<double>(report.n));
    report.rho_upper_ok = report.rho <= 2.0 * sqrt_n;
    report.iterations_ok = report.iterations_over_rho <= 2.0;

    report.log_base = report.max_degree - 4;
    if (report.log_base >= 2) {
        report.log_b_n = std::log(static_cast<double>(report.n)) / std::log(report.log_base);
        report.rho_lower_ok = static_cast<double>(report.rho) >= report.log_b_n;
    }

    // Per-topleset: the last iteration any vertex of V_r still moved by the
    // run's epsilon threshold, against the degree lemma bound.
    for (index_t r = 1; r < ordering.rho(); ++r) {
        ToplesetFixRow row;
        row.r = r;
        row.fixed_at = 0;
        row.max_degree = 0;
        for (index_t p = ordering.limits[r]; p < ordering.limits[r + 1]; ++p) {
            const index_t v = ordering.sorted[p];
            row.fixed_at = std::max(row.fixed_at, run.trace.last_change[v]);
            row.max_degree = std::max(row.max_degree, conn.degree(v));
        }
        // ceil((deg - 3) / 2) per level, never below the one iteration every
        // level costs (low-degree fans would otherwise give a void bound)
        const int step = std::max(1, static_cast<int>((row.max_degree - 3 + 1) / 2));
        row.bound = step * (r - 1) + 1;
        row.ok = row.fixed_at <= row.bound;
        report.fix_bounds_ok = report.fix_bounds_ok && row.ok;
        report.per_topleset.push_back(row);
    }
    return report;
}

}  // namespace geodist
