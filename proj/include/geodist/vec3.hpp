#pragma once

#include <cmath>
#include <cstdint>

namespace geodist {

using index_t = std::int32_t;
constexpr index_t invalid_index = -1;

template <typename T>
struct Vec3T {
    T x = 0, y = 0, z = 0;

    friend Vec3T operator+(Vec3T a, Vec3T b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3T operator-(Vec3T a, Vec3T b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3T operator*(T s, Vec3T a) { return {s * a.x, s * a.y, s * a.z}; }
    friend bool operator==(Vec3T a, Vec3T b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
};

template <typename T>
inline T dot(Vec3T<T> a, Vec3T<T> b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <typename T>
inline Vec3T<T> cross(Vec3T<T> a, Vec3T<T> b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <typename T>
inline T norm(Vec3T<T> a) {
    return std::sqrt(dot(a, a));
}

using Vec3 = Vec3T<double>;

inline bool is_finite(Vec3 a) {
    return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

}  // namespace geodist
