#pragma once

#include <limits>
#include <vector>

#include "geodist/vec3.hpp"

namespace geodist {

constexpr double infinite_distance = std::numeric_limits<double>::infinity();

enum class Precision { single_fp, double_fp };

/// Per-vertex geodesic distances from a source set. Unreached vertices hold
/// +inf. When nearest-source labels were requested, labels[v] is the index of
/// the nearest source within `sources` (-1 for unreached vertices).
struct DistanceMap {
    std::vector<double> values;
    std::vector<index_t> sources;
    std::vector<index_t> labels;  // empty unless labels were requested
    Precision precision = Precision::double_fp;
    index_t unreached = 0;

    index_t size() const { return static_cast<index_t>(values.size()); }
    bool has_labels() const { return !labels.empty(); }
};

}  // namespace geodist
