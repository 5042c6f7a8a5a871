#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "geodist/metrics.hpp"
#include "geodist/reports.hpp"
#include "geodist/toplesets.hpp"
#include "support.hpp"

using namespace geodist;
using namespace testsupport;

TEST_CASE("mape basics") {
    DistanceMap map;
    map.values = {0.0, 1.0, 2.0};
    map.sources = {0};
    const std::vector<double> exact{0.0, 1.0, 2.0};
    const ErrorReport zero = mape(map, exact);
    CHECK(zero.mape == 0.0);
    CHECK(zero.compared == 2);
    CHECK(zero.excluded == 1);

    map.values = {0.0, 2.0};
    map.sources = {0};
    const ErrorReport doubled = mape(map, std::vector<double>{0.0, 1.0});
    CHECK(doubled.mape == doctest::Approx(100.0));
    CHECK(doubled.max_rel_error == doctest::Approx(100.0));
}

TEST_CASE("mape matches an independent summation on a real run") {
    const TriangleMesh mesh = generate_grid(5, 5, 0.0);
    const Connectivity conn = build_connectivity(mesh);
    const std::vector<index_t> sources{0};
    const ToplesetOrdering ordering = compute_toplesets(conn, sources);
    const PtpResult run = ptp_run(mesh, conn, ordering, sources, {});
    const std::vector<double> exact = analytic_grid_distance(mesh, 0);

    double sum = 0.0;
    int counted = 0;
    for (index_t v = 1; v < mesh.vertex_count(); ++v) {  // skip the single source
        sum += std::abs(run.distances.values[v] - exact[v]) / exact[v];
        ++counted;
    }
    const ErrorReport report = mape(run.distances, exact);
    CHECK(report.compared == counted);
    CHECK(report.mape == doctest::Approx(100.0 * sum / counted).epsilon(1e-12));
}

TEST_CASE("mape is invariant under vertex permutation") {
    const TriangleMesh mesh = generate_grid(9, 7, 0.0);
    const Connectivity conn = build_connectivity(mesh);
    const std::vector<index_t> sources{13};
    const ToplesetOrdering ordering = compute_toplesets(conn, sources);
    const PtpResult plain = ptp_run(mesh, conn, ordering, sources, {});
    const ErrorReport before = mape(plain.distances, analytic_grid_distance(mesh, 13));

    const BandReordered re = reorder_for_bands(mesh, conn, ordering);
    const std::vector<index_t> moved{re.new_of_old[13]};
    const ToplesetOrdering moved_order = compute_toplesets(re.conn, moved);
    const PtpResult permuted = ptp_run(re.mesh, re.conn, moved_order, moved, {});
    const ErrorReport after = mape(permuted.distances, analytic_grid_distance(re.mesh, moved[0]));
    CHECK(after.mape == doctest::Approx(before.mape).epsilon(1e-12));
}

TEST_CASE("analytic grid reference closed forms") {
    const TriangleMesh mesh = generate_grid(3, 3, 0.0);
    const auto reference = analytic_grid_distance(mesh, 0);
    CHECK(reference[0] == 0.0);
    CHECK(reference[1] == 1.0);
    CHECK(reference[8] == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("analytic sphere reference closed forms") {
    const TriangleMesh mesh = generate_icosphere(1);
    const auto reference = analytic_sphere_distance(mesh, 0);
    CHECK(reference[0] == 0.0);

    // antipode and an orthogonal vertex exist on the subdivided icosahedron
    bool found_antipode = false, found_orthogonal = false;
    const Vec3 p = mesh.vertices[0];
    for (index_t v = 1; v < mesh.vertex_count(); ++v) {
        const double c = dot(p, mesh.vertices[v]) / (norm(p) * norm(mesh.vertices[v]));
        if (std::abs(c + 1.0) < 1e-12) {
            CHECK(reference[v] == doctest::Approx(std::numbers::pi).epsilon(1e-12));
            found_antipode = true;
        }
        if (std::abs(c) < 1e-12) {
            CHECK(reference[v] == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
            found_orthogonal = true;
        }
    }
    CHECK(found_antipode);
    CHECK(found_orthogonal);
}

TEST_CASE("convergence curve declines on the grid") {
    const index_t nx = 21;
    const TriangleMesh mesh = generate_grid(nx, nx, 0.0);
    const Connectivity conn = build_connectivity(mesh);
    const std::vector<index_t> center{(nx / 2) * nx + nx / 2};
    const std::vector<double> exact = analytic_grid_distance(mesh, center[0]);

    const auto curve = convergence_curve(mesh, conn, center, exact, 1e-3);
    REQUIRE(!curve.empty());
    CHECK(curve.back().mape <= curve.front().mape);
    // monotone on flat meshes: every refinement shrinks the one-sided error
    for (size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].mape <= curve[i - 1].mape + 1e-12);

    // a tighter threshold converges to a lower final error
    const auto coarse = convergence_curve(mesh, conn, center, exact, 1e-2);
    const auto fine = convergence_curve(mesh, conn, center, exact, 1e-4);
    CHECK(fine.back().mape <= coarse.back().mape);
}

TEST_CASE("convergence curve of a single triangle is flat zero") {
    const TriangleMesh mesh = single_triangle();
    const Connectivity conn = build_connectivity(mesh);
    const std::vector<double> exact{0.0, 1.0, 1.0};
    const auto curve = convergence_curve(mesh, conn, std::vector<index_t>{0}, exact, 1e-3);
    for (const auto& point : curve) CHECK(point.mape == 0.0);
}

TEST_CASE("bound suite clears generated meshes") {
    SUBCASE("grid from the center") {
        const index_t nx = 33;
        const TriangleMesh mesh = generate_grid(nx, nx, 0.0);
        const Connectivity conn = build_connectivity(mesh);
        const BoundReport report = bound_suite(mesh, conn, std::vector<index_t>{(nx / 2) * nx + nx / 2});
        CHECK(report.rho_upper_ok);
        CHECK(report.iterations_ok);
        CHECK(report.rho_lower_ok);
        CHECK(report.fix_bounds_ok);
        CHECK(report.iterations_over_rho <= 1.5);
        // regular interior: the lemma bound specializes to 2r - 1
        for (const ToplesetFixRow& row : report.per_topleset)
            if (row.max_degree == 6) CHECK(row.fixed_at <= 2 * row.r - 1);
    }
    SUBCASE("icosphere from a pole") {
        const TriangleMesh mesh = generate_icosphere(2);
        const Connectivity conn = build_connectivity(mesh);
        const BoundReport report = bound_suite(mesh, conn, std::vector<index_t>{0});
        CHECK(report.all_ok());
    }
    SUBCASE("stationary strip fixes one level per iteration") {
        const index_t nx = 40, ny = 6;
        const TriangleMesh mesh = generate_grid(nx, ny, 0.0);
        std::vector<index_t> column;
        for (index_t j = 0; j < ny; ++j) column.push_back(j * nx);
        const Connectivity conn = build_connectivity(mesh);
        const BoundReport report = bound_suite(mesh, conn, column);
        CHECK(report.fix_bounds_ok);
        for (const ToplesetFixRow& row : report.per_topleset) CHECK(row.fixed_at <= row.r);
    }
}

TEST_CASE("dynamic band stays within the fixed half-band of the analysis") {
    const index_t nx = 33;
    const TriangleMesh mesh = generate_grid(nx, nx, 0.0);
    const Connectivity conn = build_connectivity(mesh);
    const std::vector<index_t> center{(nx / 2) * nx + nx / 2};
    const ToplesetOrdering ordering = compute_toplesets(conn, center);
    PtpConfig config;
    config.record_trace = true;
    const PtpResult run = ptp_run(mesh, conn, ordering, center, config);

    for (const BandRow& row : run.trace.rows) {
        const index_t fixed_low = (row.k + 1) / 2;
        const index_t fixed_high = std::min<index_t>(row.k, ordering.rho() - 1);
        if (fixed_low > fixed_high) continue;
        CHECK(row.j - row.i <= fixed_high - fixed_low);
    }
}
