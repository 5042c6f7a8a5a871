#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "geodist/update_kernel.hpp"
#include "support.hpp"

using namespace geodist;
using namespace testsupport;

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

TEST_CASE("plane wave from the opposite edge of an equilateral triangle") {
    // side 1, both base distances 0: the candidate is the altitude sqrt(3)/2
    const Vec3 x1{1, 0, 0};
    const Vec3 x2{0.5, std::sqrt(3.0) / 2.0, 0};
    const auto result = planar_update<double>(x1, x2, 0.0, 0.0);
    CHECK(result.value == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
    CHECK(!result.degenerate);
}

TEST_CASE("one-sided update falls back to the edge length") {
    const auto result = planar_update<double>({1, 0, 0}, {0.3, 0.9, 0}, 0.0, inf);
    CHECK(result.value == 1.0);
    CHECK(result.side == 0);
}

TEST_CASE("both inputs infinite yield an infinite candidate") {
    const auto result = planar_update<double>({1, 0, 0}, {0, 1, 0}, inf, inf);
    CHECK(result.value == inf);
    CHECK(result.side == -1);
}

TEST_CASE("rejected quadratic root drops to the fallback") {
    // v0 = (0,1), v1 = (0,0), v2 = (1,0), t = (0, 1): the larger root p = 0
    // violates p >= max(t), so the fallback min(0 + 1, 1 + sqrt(2)) wins.
    const Vec3 x1{0, -1, 0};
    const Vec3 x2{1, -1, 0};
    const auto result = planar_update<double>(x1, x2, 0.0, 1.0);
    CHECK(result.value == 1.0);
    CHECK(result.side == 0);
}

TEST_CASE("degenerate triangles are fallback-only") {
    const auto result = planar_update<double>({1, 0, 0}, {2, 0, 0}, 0.1, 0.2);
    CHECK(result.degenerate);
    CHECK(result.value == doctest::Approx(1.1));
}

TEST_CASE("kernel properties on random stars") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::uniform_real_distribution<double> dist(0.0, 3.0);

    int accepted = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const Vec3 x1{coord(rng), coord(rng), coord(rng)};
        const Vec3 x2{coord(rng), coord(rng), coord(rng)};
        if (norm(cross(x1, x2)) < 1e-6) continue;
        const double t1 = dist(rng), t2 = dist(rng);
        const auto result = planar_update<double>(x1, x2, t1, t2);

        // Dijkstra upper bound: the fallback is always a candidate.
        const double fallback = std::min(t1 + norm(x1), t2 + norm(x2));
        CHECK(result.value <= fallback);
        // consistency: the candidate never undercuts the closer neighbor
        CHECK(result.value >= std::min(t1, t2));
        if (result.value < fallback) {
            ++accepted;
            CHECK(result.value >= std::max(t1, t2));  // accepted planar root property
        }

        // Scale equivariance is exact for power-of-two factors.
        const auto scaled = planar_update<double>(2.0 * x1, 2.0 * x2, 2.0 * t1, 2.0 * t2);
        CHECK(scaled.value == 2.0 * result.value);
        CHECK(scaled.side == result.side);
    }
    CHECK(accepted > 100);  // the planar branch is actually exercised
}

TEST_CASE("relax_vertex takes the minimum over the star and never increases") {
    const TriangleMesh mesh = single_triangle();
    const Connectivity conn = build_connectivity(mesh);

    SUBCASE("all neighbors infinite keeps the previous value") {
        const std::vector<double> prev{inf, inf, 4.5};
        const auto out = relax_vertex<double>(2, conn, mesh.vertices.data(), prev.data(), nullptr);
        CHECK(out.value == 4.5);
        CHECK(out.update_calls == 1);
    }
    SUBCASE("single face candidates") {
        const std::vector<double> prev{0.0, 1.0, inf};
        const auto out = relax_vertex<double>(2, conn, mesh.vertices.data(), prev.data(), nullptr);
        const auto direct = planar_update<double>(mesh.vertices[0] - mesh.vertices[2],
                                                  mesh.vertices[1] - mesh.vertices[2], 0.0, 1.0);
        CHECK(out.value == direct.value);
    }
}

TEST_CASE("relax_vertex at an interior grid vertex matches the per-face scan") {
    const TriangleMesh mesh = generate_grid(5, 5, 0.0);
    const Connectivity conn = build_connectivity(mesh);
    const index_t v = 2 * 5 + 2;

    std::vector<double> prev(mesh.vertex_count(), inf);
    // converged neighborhood: exact distances from the corner
    for (index_t u = 0; u < mesh.vertex_count(); ++u)
        if (u != v) prev[u] = norm(mesh.vertices[u] - mesh.vertices[0]);

    const auto out = relax_vertex<double>(v, conn, mesh.vertices.data(), prev.data(), nullptr);

    double expected = inf;
    for (const index_t f : brute_force_incident_faces(mesh, v)) {
        const auto& tri = mesh.faces[f];
        int c = 0;
        while (tri[c] != v) ++c;
        const index_t v1 = tri[(c + 1) % 3], v2 = tri[(c + 2) % 3];
        expected = std::min(expected,
                            planar_update<double>(mesh.vertices[v1] - mesh.vertices[v],
                                                  mesh.vertices[v2] - mesh.vertices[v],
                                                  prev[v1], prev[v2])
                                .value);
    }
    CHECK(out.value == expected);
    CHECK(out.update_calls == 6);
}
