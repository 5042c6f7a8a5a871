// Python bindings for the geodesic engine: mesh construction, the solvers,
// farthest point sampling and the error metrics.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "geodist/connectivity.hpp"
#include "geodist/mesh.hpp"
#include "geodist/mesh_io.hpp"
#include "geodist/metrics.hpp"
#include "geodist/ptp.hpp"
#include "geodist/reference_solvers.hpp"
#include "geodist/sampling.hpp"
#include "geodist/toplesets.hpp"

namespace py = pybind11;
using namespace geodist;

namespace {

// Mesh plus its half-edge tables, built once at construction.
struct MeshHandle {
    TriangleMesh mesh;
    Connectivity conn;

    explicit MeshHandle(TriangleMesh m) : mesh(std::move(m)), conn(build_connectivity(mesh)) {}
};

py::array_t<double> vertices_array(const MeshHandle& handle) {
    py::array_t<double> out({handle.mesh.vertex_count(), index_t(3)});
    auto view = out.mutable_unchecked<2>();
    for (index_t v = 0; v < handle.mesh.vertex_count(); ++v) {
        view(v, 0) = handle.mesh.vertices[v].x;
        view(v, 1) = handle.mesh.vertices[v].y;
        view(v, 2) = handle.mesh.vertices[v].z;
    }
    return out;
}

py::array_t<index_t> faces_array(const MeshHandle& handle) {
    py::array_t<index_t> out({handle.mesh.face_count(), index_t(3)});
    auto view = out.mutable_unchecked<2>();
    for (index_t f = 0; f < handle.mesh.face_count(); ++f)
        for (int c = 0; c < 3; ++c) view(f, c) = handle.mesh.faces[f][c];
    return out;
}

template <typename T>
py::array_t<T> to_array(const std::vector<T>& values) {
    py::array_t<T> out(static_cast<py::ssize_t>(values.size()));
    std::copy(values.begin(), values.end(), out.mutable_data());
    return out;
}

PtpConfig make_config(double epsilon, const std::string& precision, int workers, bool labels) {
    PtpConfig config;
    config.epsilon = epsilon;
    config.workers = workers;
    config.with_labels = labels;
    if (precision == "single") {
        config.precision = Precision::single_fp;
    } else if (precision == "double") {
        config.precision = Precision::double_fp;
    } else {
        throw std::invalid_argument("precision must be 'single' or 'double'");
    }
    return config;
}

py::dict distance_result(const DistanceMap& map) {
    py::dict out;
    out["distances"] = to_array(map.values);
    out["unreached"] = map.unreached;
    if (map.has_labels()) out["labels"] = to_array(map.labels);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Geodesic distance fields on triangle meshes (parallel toplesets propagation)";

    py::class_<MeshHandle>(m, "Mesh")
        .def_property_readonly("n_vertices",
                               [](const MeshHandle& h) { return h.mesh.vertex_count(); })
        .def_property_readonly("n_faces", [](const MeshHandle& h) { return h.mesh.face_count(); })
        .def("vertices", &vertices_array)
        .def("faces", &faces_array)
        .def("degree_histogram",
             [](const MeshHandle& h) {
                 py::dict out;
                 for (const auto& [degree, count] : degree_histogram(h.conn))
                     out[py::int_(degree)] = count;
                 return out;
             })
        .def("__repr__", [](const MeshHandle& h) {
            return "<geodist.Mesh with " + std::to_string(h.mesh.vertex_count()) + " vertices, " +
                   std::to_string(h.mesh.face_count()) + " faces>";
        });

    m.def("load_mesh", [](const std::string& path) { return MeshHandle(load_mesh(path)); },
          py::arg("path"), "Load an OFF or OBJ triangle mesh.");
    m.def("generate_grid",
          [](index_t nx, index_t ny, double shear) { return MeshHandle(generate_grid(nx, ny, shear)); },
          py::arg("nx"), py::arg("ny"), py::arg("shear") = 0.0,
          "Planar triangulated grid at unit spacing; nonzero shear skews it.");
    m.def("generate_icosphere", [](int subdiv) { return MeshHandle(generate_icosphere(subdiv)); },
          py::arg("subdiv"), "Unit sphere from a subdivided icosahedron.");
    m.def("mesh_from_arrays",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> vertices,
             py::array_t<index_t, py::array::c_style | py::array::forcecast> faces) {
              if (vertices.ndim() != 2 || vertices.shape(1) != 3)
                  throw std::invalid_argument("vertices must have shape (n, 3)");
              if (faces.ndim() != 2 || faces.shape(1) != 3)
                  throw std::invalid_argument("faces must have shape (m, 3)");
              TriangleMesh mesh;
              const auto v = vertices.unchecked<2>();
              const auto f = faces.unchecked<2>();
              mesh.vertices.resize(v.shape(0));
              for (py::ssize_t i = 0; i < v.shape(0); ++i)
                  mesh.vertices[i] = {v(i, 0), v(i, 1), v(i, 2)};
              mesh.faces.resize(f.shape(0));
              for (py::ssize_t i = 0; i < f.shape(0); ++i)
                  mesh.faces[i] = {f(i, 0), f(i, 1), f(i, 2)};
              validate_mesh(mesh);
              return MeshHandle(std::move(mesh));
          },
          py::arg("vertices"), py::arg("faces"), "Build a mesh from numpy arrays.");

    m.def("geodesics",
          [](const MeshHandle& handle, const std::vector<index_t>& sources,
             const std::string& method, double epsilon, const std::string& precision, int workers,
             bool labels) {
              if (method == "ptp") {
                  const PtpConfig config = make_config(epsilon, precision, workers, labels);
                  PtpResult result;
                  {
                      py::gil_scoped_release release;
                      const ToplesetOrdering ordering = compute_toplesets(handle.conn, sources);
                      result = ptp_run(handle.mesh, handle.conn, ordering, sources, config);
                  }
                  py::dict out = distance_result(result.distances);
                  out["iterations"] = result.trace.iterations;
                  out["relax_calls"] = result.stats.relax_calls;
                  out["workers"] = result.stats.workers;
                  return out;
              }
              if (method == "fm") {
                  FmResult result;
                  {
                      py::gil_scoped_release release;
                      result = fm_run(handle.mesh, handle.conn, sources);
                  }
                  py::dict out = distance_result(result.distances);
                  out["relax_calls"] = result.stats.relax_calls;
                  return out;
              }
              if (method == "dijkstra") {
                  DistanceMap map;
                  {
                      py::gil_scoped_release release;
                      map = dijkstra_run(handle.mesh, handle.conn, sources);
                  }
                  return distance_result(map);
              }
              throw std::invalid_argument("method must be 'ptp', 'fm' or 'dijkstra'");
          },
          py::arg("mesh"), py::arg("sources"), py::arg("method") = "ptp",
          py::arg("epsilon") = 1e-3, py::arg("precision") = "double", py::arg("workers") = 0,
          py::arg("labels") = false,
          "Distance map from a source set; returns a dict with 'distances' and run stats.");

    m.def("toplesets",
          [](const MeshHandle& handle, const std::vector<index_t>& sources) {
              const ToplesetOrdering ordering = compute_toplesets(handle.conn, sources);
              py::dict out;
              out["sorted"] = to_array(ordering.sorted);
              out["limits"] = to_array(ordering.limits);
              out["rho"] = ordering.rho();
              out["unreached"] = ordering.unreached;
              return out;
          },
          py::arg("mesh"), py::arg("sources"),
          "Breadth-first topological level sets from the source set.");

    m.def("farthest_point_sampling",
          [](const MeshHandle& handle, index_t count, index_t seed, double epsilon, int workers) {
              const PtpConfig config = make_config(epsilon, "double", workers, true);
              SamplingResult result;
              {
                  py::gil_scoped_release release;
                  result = fps(handle.mesh, handle.conn, count, seed, config);
              }
              py::list history;
              for (const FpsIterationStat& stat : result.history) {
                  py::dict row;
                  row["sources"] = stat.sources;
                  row["rho"] = stat.rho;
                  row["relax_calls"] = stat.relax_calls;
                  row["radius"] = stat.radius;
                  row["picked"] = stat.picked;
                  history.append(row);
              }
              py::dict out;
              out["samples"] = to_array(result.samples);
              out["labels"] = to_array(result.labels);
              out["radius"] = result.radius;
              out["history"] = history;
              return out;
          },
          py::arg("mesh"), py::arg("count"), py::arg("seed") = 0, py::arg("epsilon") = 1e-3,
          py::arg("workers") = 0,
          "Farthest point sampling with per-iteration cost statistics.");

    m.def("voronoi",
          [](const MeshHandle& handle, const std::vector<index_t>& samples, double epsilon,
             int workers) {
              std::vector<index_t> labels;
              {
                  py::gil_scoped_release release;
                  labels = voronoi(handle.mesh, handle.conn, samples,
                                   make_config(epsilon, "double", workers, true));
              }
              return to_array(labels);
          },
          py::arg("mesh"), py::arg("samples"), py::arg("epsilon") = 1e-3, py::arg("workers") = 0,
          "Nearest-sample label per vertex.");

    m.def("mape",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> approx,
             py::array_t<double, py::array::c_style | py::array::forcecast> exact,
             const std::vector<index_t>& sources) {
              DistanceMap map;
              map.values.assign(approx.data(), approx.data() + approx.size());
              map.sources = sources;
              const ErrorReport report =
                  mape(map, std::span<const double>(exact.data(), static_cast<size_t>(exact.size())));
              py::dict out;
              out["mape"] = report.mape;
              out["max_rel_error"] = report.max_rel_error;
              out["compared"] = report.compared;
              out["excluded"] = report.excluded;
              return out;
          },
          py::arg("approx"), py::arg("exact"), py::arg("sources") = std::vector<index_t>{},
          "Mean absolute percent error against a reference, excluding sources.");

    m.def("grid_reference",
          [](const MeshHandle& handle, const std::vector<index_t>& sources) {
              return to_array(analytic_grid_distance(handle.mesh, sources));
          },
          py::arg("mesh"), py::arg("sources"),
          "Planar Euclidean distance to the nearest source (flat meshes).");
    m.def("sphere_reference",
          [](const MeshHandle& handle, const std::vector<index_t>& sources) {
              return to_array(analytic_sphere_distance(handle.mesh, sources));
          },
          py::arg("mesh"), py::arg("sources"),
          "Great-circle distance to the nearest source (unit spheres).");

    m.def("write_distance_ply",
          [](const MeshHandle& handle,
             py::array_t<double, py::array::c_style | py::array::forcecast> values,
             const std::string& path) {
              DistanceMap map;
              map.values.assign(values.data(), values.data() + values.size());
              write_distance_ply(handle.mesh, map, path);
          },
          py::arg("mesh"), py::arg("distances"), py::arg("path"),
          "Write an ASCII PLY colored by the distance ramp.");
}
