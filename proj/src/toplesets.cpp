#include "geodist/toplesets.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace geodist {

index_t ToplesetOrdering::level_of(index_t v) const {
    const index_t p = position[v];
    if (p == invalid_index) return invalid_index;
    const auto it = std::upper_bound(limits.begin(), limits.end(), p);
    return static_cast<index_t>(it - limits.begin()) - 1;
}

ToplesetOrdering compute_toplesets(const Connectivity& conn, std::span<const index_t> sources) {
    const index_t n = conn.vertex_count();
    if (sources.empty()) throw std::invalid_argument("compute_toplesets: empty source set");

    ToplesetOrdering order;
    order.position.assign(n, invalid_index);
    order.sorted.reserve(n);

    std::vector<index_t> level(sources.begin(), sources.end());
    std::sort(level.begin(), level.end());
    for (size_t i = 0; i < level.size(); ++i) {
        const index_t s = level[i];
        if (s < 0 || s >= n)
            throw std::invalid_argument("compute_toplesets: source index " + std::to_string(s) +
                                        " out of range");
        if (i > 0 && level[i] == level[i - 1])
            throw std::invalid_argument("compute_toplesets: duplicate source index " +
                                        std::to_string(s));
    }

    order.limits.push_back(0);
    while (!level.empty()) {
        for (const index_t v : level) {
            order.position[v] = static_cast<index_t>(order.sorted.size());
            order.sorted.push_back(v);
        }
        order.limits.push_back(static_cast<index_t>(order.sorted.size()));

        std::vector<index_t> next;
        for (const index_t v : level) {
            for (const index_t u : conn.neighbors(v)) {
                if (order.position[u] == invalid_index) {
                    order.position[u] = n;  // claimed, slot assigned next round
                    next.push_back(u);
                }
            }
        }
        std::sort(next.begin(), next.end());
        level = std::move(next);
    }
    order.unreached = n - order.reachable();
    return order;
}

BandReordered reorder_for_bands(const TriangleMesh& mesh, const Connectivity& conn,
                                const ToplesetOrdering& ordering) {
    (void)conn;
    const index_t n = mesh.vertex_count();

    BandReordered out;
    out.old_of_new = ordering.sorted;
    out.old_of_new.reserve(n);
    for (index_t v = 0; v < n; ++v)
        if (ordering.position[v] == invalid_index) out.old_of_new.push_back(v);

    out.new_of_old.assign(n, invalid_index);
    for (index_t p = 0; p < n; ++p) out.new_of_old[out.old_of_new[p]] = p;

    out.mesh.vertices.resize(n);
    for (index_t p = 0; p < n; ++p) out.mesh.vertices[p] = mesh.vertices[out.old_of_new[p]];
    out.mesh.faces.resize(mesh.faces.size());
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        for (int c = 0; c < 3; ++c) out.mesh.faces[f][c] = out.new_of_old[mesh.faces[f][c]];
    }
    out.conn = build_connectivity(out.mesh);

    out.ordering.limits = ordering.limits;
    out.ordering.unreached = ordering.unreached;
    out.ordering.sorted.resize(ordering.sorted.size());
    for (index_t p = 0; p < ordering.reachable(); ++p) out.ordering.sorted[p] = p;
    out.ordering.position.assign(n, invalid_index);
    for (index_t p = 0; p < ordering.reachable(); ++p) out.ordering.position[p] = p;
    return out;
}

std::vector<SequenceSegment> classify_sequences(const ToplesetOrdering& ordering) {
    const index_t rho = ordering.rho();
    if (rho < 2) throw std::invalid_argument("classify_sequences: need at least two toplesets");

    const auto sign_of = [&](index_t r) {
        const index_t d = ordering.level_size(r) - ordering.level_size(r - 1);
        return d > 0 ? SequenceClass::increasing
                     : d < 0 ? SequenceClass::decreasing : SequenceClass::stationary;
    };

    std::vector<SequenceSegment> segments;
    SequenceSegment current{0, 1, sign_of(1)};
    for (index_t r = 2; r < rho; ++r) {
        const SequenceClass cls = sign_of(r);
        if (cls == current.cls) {
            current.end = r;
        } else {
            segments.push_back(current);
            current = {r, r, cls};
        }
    }
    segments.push_back(current);
    return segments;
}

std::vector<index_t> topleset_histogram(const ToplesetOrdering& ordering) {
    std::vector<index_t> sizes(ordering.rho());
    for (index_t r = 0; r < ordering.rho(); ++r) sizes[r] = ordering.level_size(r);
    return sizes;
}

const char* to_string(SequenceClass cls) {
    switch (cls) {
        case SequenceClass::increasing: return "increasing";
        case SequenceClass::stationary: return "stationary";
        case SequenceClass::decreasing: return "decreasing";
    }
    return "?";
}

}  // namespace geodist
