#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>

#include "geodist/connectivity.hpp"
#include "geodist/vec3.hpp"

namespace geodist {

/// Outcome of one triangle update. `side` tells which of the two triangle
/// neighbors carries the nearest-source label of the candidate: 0 for v1,
/// 1 for v2, -1 when the candidate is infinite.
template <typename T>
struct UpdateCandidate {
    T value = std::numeric_limits<T>::infinity();
    int side = -1;
    bool degenerate = false;
};

/// Local planar wavefront solve across one triangle (Kimmel-Sethian update).
///
/// x1, x2 are the edge vectors from the vertex being updated to its two
/// triangle neighbors; t1, t2 the neighbors' tentative distances. With both
/// distances finite, solves a p^2 + b p + c = 0 built from the Gram inverse
/// Q = (X^T X)^-1 (a = 1'Q1, b = -2 1'Qt, c = t'Qt - 1) and keeps the larger
/// root p when the discriminant is non-negative, p >= max(t1, t2), and both
/// components of Q(t - p 1) are strictly negative (the front crosses the
/// triangle interior). Otherwise, and for infinite inputs, falls back to the
/// one-sided candidate min(t1 + |x1|, t2 + |x2|). Triangles whose Gram matrix
/// is singular within 1e-12 relative to |x1||x2| are treated as fallback-only
/// and marked degenerate.
template <typename T>
UpdateCandidate<T> planar_update(Vec3T<T> x1, Vec3T<T> x2, T t1, T t2) {
    constexpr T inf = std::numeric_limits<T>::infinity();

    UpdateCandidate<T> out;
    const T f1 = t1 + norm(x1);
    const T f2 = t2 + norm(x2);
    if (f1 <= f2) {
        out.value = f1;
        out.side = 0;
    } else {
        out.value = f2;
        out.side = 1;
    }
    if (t1 == inf && t2 == inf) return {inf, -1, false};
    if (t1 == inf || t2 == inf) return out;

    const T g11 = dot(x1, x1), g22 = dot(x2, x2), g12 = dot(x1, x2);
    const T det = g11 * g22 - g12 * g12;
    constexpr T sin_tol = T(1e-12);
    if (!(det > sin_tol * sin_tol * g11 * g22)) {
        out.degenerate = true;
        return out;
    }

    const T q11 = g22 / det, q22 = g11 / det, q12 = -g12 / det;
    const T qt1 = q11 * t1 + q12 * t2;  // components of Q t
    const T qt2 = q12 * t1 + q22 * t2;
    const T a = q11 + T(2) * q12 + q22;
    const T b = T(-2) * (qt1 + qt2);
    const T c = t1 * qt1 + t2 * qt2 - T(1);
    const T disc = b * b - T(4) * a * c;
    if (disc >= T(0)) {
        const T p = (-b + std::sqrt(disc)) / (T(2) * a);
        if (p >= std::max(t1, t2)) {
            // Front direction test: Q (t - p 1) componentwise negative.
            const T m1 = q11 * (t1 - p) + q12 * (t2 - p);
            const T m2 = q12 * (t1 - p) + q22 * (t2 - p);
            if (m1 < T(0) && m2 < T(0) && p <= out.value) {
                out.value = p;
                out.side = t1 <= t2 ? 0 : 1;
            }
        }
    }
    return out;
}

/// One relaxation of vertex v against the previous distance buffer: the
/// minimum of its previous value and every incident triangle's candidate.
/// Never increases the distance. When labels are tracked, the winning
/// candidate's neighbor label is adopted (prev_labels may be null).
template <typename T>
struct RelaxResult {
    T value;
    index_t label;
    std::int64_t update_calls;
    std::int64_t degenerate_calls;
};

template <typename T>
RelaxResult<T> relax_vertex(index_t v, const Connectivity& conn, const Vec3T<T>* positions,
                            const T* prev_dist, const index_t* prev_labels) {
    RelaxResult<T> out{prev_dist[v], prev_labels ? prev_labels[v] : invalid_index, 0, 0};
    const Vec3T<T> pv = positions[v];
    conn.for_each_incident_triangle(v, [&](index_t v1, index_t v2, index_t) {
        // A planar solve assumes t1 and t2 sample one wavefront. Where the
        // waves of two sources meet, a triangle straddling the boundary would
        // fit a fictitious front arriving before either wave, so mixed-label
        // triangles are restricted to their one-sided candidates.
        const bool mixed = prev_labels && prev_labels[v1] != prev_labels[v2] &&
                           std::isfinite(prev_dist[v1]) && std::isfinite(prev_dist[v2]);
        const T t2 = mixed ? std::numeric_limits<T>::infinity() : prev_dist[v2];
        UpdateCandidate<T> cand =
            planar_update<T>(positions[v1] - pv, positions[v2] - pv, prev_dist[v1], t2);
        if (mixed) {
            const T other = prev_dist[v2] + norm(positions[v2] - pv);
            if (other < cand.value) cand = {other, 1, false};
        }
        ++out.update_calls;
        out.degenerate_calls += cand.degenerate ? 1 : 0;
        if (cand.value < out.value) {
            out.value = cand.value;
            if (prev_labels) out.label = prev_labels[cand.side == 0 ? v1 : v2];
        }
    });
    return out;
}

}  // namespace geodist
