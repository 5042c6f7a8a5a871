#include "geodist/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace geodist {

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

// Skips blank lines and '#' comments.
bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        const auto pos = line.find_first_not_of(" \t\r\n");
        if (pos == std::string::npos) continue;
        if (line[pos] == '#') continue;
        return true;
    }
    return false;
}

TriangleMesh load_off(const std::string& path, std::istream& in) {
    std::string line;
    if (!next_content_line(in, line)) parse_fail(path, "empty OFF file");
    std::istringstream header(line);
    std::string magic;
    header >> magic;
    if (magic != "OFF") parse_fail(path, "missing OFF header");

    long long nv = -1, nf = -1, ne = 0;
    if (!(header >> nv >> nf >> ne)) {
        if (!next_content_line(in, line)) parse_fail(path, "missing element counts");
        std::istringstream counts(line);
        if (!(counts >> nv >> nf >> ne)) parse_fail(path, "malformed element counts");
    }
    if (nv < 0 || nf < 0) parse_fail(path, "negative element counts");

    TriangleMesh mesh;
    mesh.vertices.reserve(nv);
    for (long long v = 0; v < nv; ++v) {
        if (!next_content_line(in, line)) parse_fail(path, "unexpected end of file in vertex " + std::to_string(v));
        std::istringstream row(line);
        Vec3 p;
        if (!(row >> p.x >> p.y >> p.z)) parse_fail(path, "malformed vertex " + std::to_string(v));
        mesh.vertices.push_back(p);
    }
    mesh.faces.reserve(nf);
    for (long long f = 0; f < nf; ++f) {
        if (!next_content_line(in, line)) parse_fail(path, "unexpected end of file in face " + std::to_string(f));
        std::istringstream row(line);
        long long k, a, b, c;
        if (!(row >> k)) parse_fail(path, "malformed face " + std::to_string(f));
        if (k != 3) parse_fail(path, "face " + std::to_string(f) + " has " + std::to_string(k) +
                                         " vertices, only triangles are supported");
        if (!(row >> a >> b >> c)) parse_fail(path, "malformed face " + std::to_string(f));
        mesh.faces.push_back({static_cast<index_t>(a), static_cast<index_t>(b), static_cast<index_t>(c)});
    }
    return mesh;
}

// Accepts "f 1 2 3" and the slashed variants "f 1/4 2/5/6 3//7";
// only the leading vertex index of each corner is used.
index_t obj_corner_index(const std::string& token, size_t nv, const std::string& path, long long record) {
    const auto slash = token.find('/');
    const std::string head = slash == std::string::npos ? token : token.substr(0, slash);
    long long idx = 0;
    const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), idx);
    if (ec != std::errc() || ptr != head.data() + head.size())
        parse_fail(path, "malformed face index '" + token + "' in f record " + std::to_string(record));
    if (idx < 0) idx += static_cast<long long>(nv) + 1;  // OBJ relative indexing
    if (idx < 1) parse_fail(path, "face index out of range in f record " + std::to_string(record));
    return static_cast<index_t>(idx - 1);
}

TriangleMesh load_obj(const std::string& path, std::istream& in) {
    TriangleMesh mesh;
    std::string line;
    long long f_records = 0;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string tag;
        if (!(row >> tag)) continue;
        if (tag == "v") {
            Vec3 p;
            if (!(row >> p.x >> p.y >> p.z))
                parse_fail(path, "malformed v record " + std::to_string(mesh.vertices.size()));
            mesh.vertices.push_back(p);
        } else if (tag == "f") {
            std::vector<std::string> corners;
            std::string token;
            while (row >> token) corners.push_back(token);
            if (corners.size() != 3)
                parse_fail(path, "f record " + std::to_string(f_records) + " has " +
                                     std::to_string(corners.size()) +
                                     " corners, only triangles are supported");
            std::array<index_t, 3> tri;
            for (int c = 0; c < 3; ++c)
                tri[c] = obj_corner_index(corners[c], mesh.vertices.size(), path, f_records);
            mesh.faces.push_back(tri);
            ++f_records;
        }
        // vt/vn/usemtl/... records are ignored
    }
    return mesh;
}

std::string format_coord(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

TriangleMesh load_mesh(const std::string& path, MeshFormat format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open file");
    TriangleMesh mesh = format == MeshFormat::off ? load_off(path, in) : load_obj(path, in);
    try {
        validate_mesh(mesh);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return mesh;
}

TriangleMesh load_mesh(const std::string& path) {
    const auto dot = path.find_last_of('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == "off") return load_mesh(path, MeshFormat::off);
    if (ext == "obj") return load_mesh(path, MeshFormat::obj);
    throw std::runtime_error(path + ": unsupported mesh format '." + ext + "' (use .off or .obj)");
}

void write_mesh(const TriangleMesh& mesh, const std::string& path, MeshFormat format) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open file for writing");
    if (format == MeshFormat::off) {
        out << "OFF\n" << mesh.vertex_count() << ' ' << mesh.face_count() << " 0\n";
        for (const auto& p : mesh.vertices)
            out << format_coord(p.x) << ' ' << format_coord(p.y) << ' ' << format_coord(p.z) << '\n';
        for (const auto& tri : mesh.faces) out << "3 " << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
    } else {
        for (const auto& p : mesh.vertices)
            out << "v " << format_coord(p.x) << ' ' << format_coord(p.y) << ' ' << format_coord(p.z) << '\n';
        for (const auto& tri : mesh.faces)
            out << "f " << tri[0] + 1 << ' ' << tri[1] + 1 << ' ' << tri[2] + 1 << '\n';
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

std::array<std::uint8_t, 3> distance_color(double d, double d_max) {
    double u = 1.0;
    if (std::isfinite(d)) {
        u = d_max > 0.0 ? d / d_max : 0.0;
        u = std::clamp(u, 0.0, 1.0);
    }
    const auto channel = [](double x) { return static_cast<std::uint8_t>(std::round(255.0 * x)); };
    return {channel(u), channel(1.0 - std::abs(2.0 * u - 1.0)), channel(1.0 - u)};
}

std::array<std::uint8_t, 3> label_color(index_t label) {
    if (label < 0) return {128, 128, 128};
    // 32-bit avalanche mix (Wang hash) of the label index.
    std::uint32_t h = static_cast<std::uint32_t>(label);
    h = (h ^ 61u) ^ (h >> 16);
    h *= 9u;
    h ^= h >> 4;
    h *= 0x27d4eb2du;
    h ^= h >> 15;
    return {static_cast<std::uint8_t>(h & 0xff), static_cast<std::uint8_t>((h >> 8) & 0xff),
            static_cast<std::uint8_t>((h >> 16) & 0xff)};
}

namespace {

void write_ply(const TriangleMesh& mesh, const std::string& path,
               const std::function<std::array<std::uint8_t, 3>(index_t)>& color) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open file for writing");
    out << "ply\nformat ascii 1.0\n";
    out << "element vertex " << mesh.vertex_count() << '\n';
    out << "property float x\nproperty float y\nproperty float z\n";
    out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    out << "element face " << mesh.face_count() << '\n';
    out << "property list uchar int vertex_indices\nend_header\n";
    for (index_t v = 0; v < mesh.vertex_count(); ++v) {
        const auto& p = mesh.vertices[v];
        const auto rgb = color(v);
        out << static_cast<float>(p.x) << ' ' << static_cast<float>(p.y) << ' '
            << static_cast<float>(p.z) << ' ' << int(rgb[0]) << ' ' << int(rgb[1]) << ' '
            << int(rgb[2]) << '\n';
    }
    for (const auto& tri : mesh.faces) out << "3 " << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
    if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace

void write_distance_ply(const TriangleMesh& mesh, const DistanceMap& dist, const std::string& path) {
    if (dist.size() != mesh.vertex_count())
        throw std::invalid_argument("write_distance_ply: distance map size mismatch");
    double d_max = 0.0;
    for (const double d : dist.values)
        if (std::isfinite(d)) d_max = std::max(d_max, d);
    write_ply(mesh, path, [&](index_t v) { return distance_color(dist.values[v], d_max); });
}

void write_label_ply(const TriangleMesh& mesh, const DistanceMap& dist, const std::string& path) {
    if (dist.size() != mesh.vertex_count())
        throw std::invalid_argument("write_label_ply: distance map size mismatch");
    write_ply(mesh, path, [&](index_t v) {
        return label_color(dist.has_labels() ? dist.labels[v] : invalid_index);
    });
}

std::string format_distance(double d) {
    if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    std::string s = buf;
    if (s.find_first_of(".en") == std::string::npos) s += ".0";
    return s;
}

void write_distance_csv(const DistanceMap& dist, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open file for writing");
    out << "index,distance,label\n";
    for (index_t v = 0; v < dist.size(); ++v) {
        const index_t label = dist.has_labels() ? dist.labels[v] : invalid_index;
        out << v << ',' << format_distance(dist.values[v]) << ',' << label << '\n';
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace geodist
