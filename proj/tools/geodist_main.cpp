// geodist: geodesic distance fields on triangle meshes.
//
// Subcommands: geodesic (distance maps), fps (farthest point sampling),
// diag (topleset / bound diagnostics), bench (source-count sweeps).
// Exit codes: 0 success, 2 input error, 3 solver or output error.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "geodist/connectivity.hpp"
#include "geodist/mesh.hpp"
#include "geodist/mesh_io.hpp"
#include "geodist/metrics.hpp"
#include "geodist/ptp.hpp"
#include "geodist/reference_solvers.hpp"
#include "geodist/reports.hpp"
#include "geodist/sampling.hpp"
#include "geodist/toplesets.hpp"

namespace {

using nlohmann::json;
using namespace geodist;

constexpr int exit_ok = 0;
constexpr int exit_input_error = 2;
constexpr int exit_solver_error = 3;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Everything needed to reproduce a run; echoed into every JSON stats file.
struct RunManifest {
    std::string command;
    std::string mesh_path;
    std::string grid_spec;    // "NX,NY[,SHEAR]"
    std::string sphere_spec;  // "SUBDIV"
    std::vector<index_t> sources;
    double epsilon = 1e-3;
    std::string precision = "double";
    std::string workers = "auto";
    std::string method = "ptp";
    index_t count = 0;   // fps
    index_t seed = 0;    // fps
    std::string range;   // bench, "A:B"

    json to_json() const {
        json j{{"command", command}, {"epsilon", epsilon},
               {"precision", precision}, {"workers", workers}};
        if (!mesh_path.empty()) j["mesh"] = mesh_path;
        if (!grid_spec.empty()) j["grid"] = grid_spec;
        if (!sphere_spec.empty()) j["sphere"] = sphere_spec;
        if (!sources.empty()) j["sources"] = sources;
        if (command == "geodesic") j["method"] = method;
        if (command == "fps") {
            j["count"] = count;
            j["seed"] = seed;
        }
        if (command == "bench") j["sources_range"] = range;
        return j;
    }
};

struct MeshInput {
    TriangleMesh mesh;
    Connectivity conn;
    bool generated_grid = false;
    bool generated_sphere = false;
};

long long parse_integer(const std::string& text, const char* what) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw InputError(std::string("invalid ") + what + ": '" + text + "'");
    return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    size_t begin = 0;
    while (true) {
        const size_t end = text.find(sep, begin);
        parts.push_back(text.substr(begin, end - begin));
        if (end == std::string::npos) break;
        begin = end + 1;
    }
    return parts;
}

MeshInput resolve_mesh(const RunManifest& manifest) {
    MeshInput input;
    if (!manifest.mesh_path.empty()) {
        try {
            input.mesh = load_mesh(manifest.mesh_path);
        } catch (const std::exception& e) {
            throw InputError(e.what());  // parse and validation failures are input errors
        }
    } else if (!manifest.grid_spec.empty()) {
        const auto parts = split(manifest.grid_spec, ',');
        if (parts.size() != 2 && parts.size() != 3)
            throw InputError("--grid expects NX,NY or NX,NY,SHEAR");
        const long long nx = parse_integer(parts[0], "grid size");
        const long long ny = parse_integer(parts[1], "grid size");
        double shear = 0.0;
        if (parts.size() == 3) {
            try {
                shear = std::stod(parts[2]);
            } catch (const std::exception&) {
                throw InputError("invalid grid shear: '" + parts[2] + "'");
            }
        }
        if (nx < 2 || ny < 2) throw InputError("--grid sizes must be >= 2");
        input.mesh = generate_grid(static_cast<index_t>(nx), static_cast<index_t>(ny), shear);
        input.generated_grid = shear == 0.0;
    } else {
        const long long subdiv = parse_integer(manifest.sphere_spec, "sphere subdivision");
        if (subdiv < 0 || subdiv > 9) throw InputError("--sphere subdivision must be in [0, 9]");
        input.mesh = generate_icosphere(static_cast<int>(subdiv));
        input.generated_sphere = true;
    }
    try {
        input.conn = build_connectivity(input.mesh);
    } catch (const std::exception& e) {
        throw InputError(e.what());  // non-manifold input
    }
    return input;
}

void check_sources(const RunManifest& manifest, const TriangleMesh& mesh) {
    if (manifest.sources.empty()) throw InputError("--source is required");
    for (const index_t s : manifest.sources) {
        if (s < 0 || s >= mesh.vertex_count())
            throw InputError("source index " + std::to_string(s) + " out of range (mesh has " +
                             std::to_string(mesh.vertex_count()) + " vertices)");
    }
}

PtpConfig make_config(const RunManifest& manifest) {
    PtpConfig config;
    config.epsilon = manifest.epsilon;
    if (!(config.epsilon > 0)) throw InputError("--epsilon must be positive");
    if (manifest.precision == "single") {
        config.precision = Precision::single_fp;
    } else if (manifest.precision == "double") {
        config.precision = Precision::double_fp;
    } else {
        throw InputError("--precision must be 'single' or 'double'");
    }
    std::string workers = manifest.workers;
    if (workers == "auto") {
        if (const char* env = std::getenv("GEODIST_WORKERS")) workers = env;
    }
    if (workers != "auto") {
        const long long w = parse_integer(workers, "worker count");
        if (w < 1) throw InputError("--workers must be >= 1 or 'auto'");
        config.workers = static_cast<int>(w);
    }
    return config;
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open file for writing");
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error(path + ": write failed");
}

// Exact reference for generated inputs, when one exists.
std::optional<std::vector<double>> builtin_reference(const MeshInput& input,
                                                     std::span<const index_t> sources) {
    if (input.generated_grid) return analytic_grid_distance(input.mesh, sources);
    if (input.generated_sphere) return analytic_sphere_distance(input.mesh, sources);
    return std::nullopt;
}

struct OutputPaths {
    std::string csv, ply, trace, stats;
};

int cmd_geodesic(const RunManifest& manifest, const OutputPaths& out) {
    const MeshInput input = resolve_mesh(manifest);
    check_sources(manifest, input.mesh);
    const PtpConfig config = make_config(manifest);

    DistanceMap map;
    json stats{{"manifest", manifest.to_json()}};
    if (manifest.method == "ptp") {
        PtpConfig run_config = config;
        run_config.record_trace = !out.trace.empty();
        const ToplesetOrdering ordering = compute_toplesets(input.conn, manifest.sources);
        PtpResult result = ptp_run(input.mesh, input.conn, ordering, manifest.sources, run_config);
        stats.update(run_stats_json(result.distances, ordering, result.trace, result.stats));
        if (!out.trace.empty()) write_band_trace_csv(result.trace, out.trace);
        map = std::move(result.distances);
    } else if (manifest.method == "fm") {
        FmResult result = fm_run(input.mesh, input.conn, manifest.sources);
        stats["n"] = result.distances.size();
        stats["relax_calls"] = result.stats.relax_calls;
        stats["pops"] = result.stats.pops;
        stats["unreached"] = result.distances.unreached;
        stats["wall_seconds"] = result.stats.wall_seconds;
        map = std::move(result.distances);
    } else if (manifest.method == "dijkstra") {
        map = dijkstra_run(input.mesh, input.conn, manifest.sources);
        stats["n"] = map.size();
        stats["unreached"] = map.unreached;
    } else {
        throw InputError("--method must be ptp, fm or dijkstra");
    }

    if (const auto reference = builtin_reference(input, manifest.sources)) {
        const ErrorReport report = mape(map, *reference);
        stats["mape_percent"] = report.mape;
        stats["max_rel_error_percent"] = report.max_rel_error;
        stats["compared"] = report.compared;
    }
    if (!out.csv.empty()) write_distance_csv(map, out.csv);
    if (!out.ply.empty()) write_distance_ply(input.mesh, map, out.ply);
    if (!out.stats.empty()) write_json(stats, out.stats);
    std::cout << "geodesic: n=" << map.size() << " method=" << manifest.method
              << " unreached=" << map.unreached << '\n';
    return exit_ok;
}

int cmd_fps(const RunManifest& manifest, const OutputPaths& out, const std::string& dist_csv) {
    const MeshInput input = resolve_mesh(manifest);
    const PtpConfig config = make_config(manifest);
    if (manifest.count < 1) throw InputError("--count must be >= 1");
    if (manifest.count > input.mesh.vertex_count())
        throw InputError("--count exceeds the vertex count");
    if (manifest.seed < 0 || manifest.seed >= input.mesh.vertex_count())
        throw InputError("--seed vertex out of range");

    const SamplingResult sampling = fps(input.mesh, input.conn, manifest.count, manifest.seed, config);

    if (!out.csv.empty()) write_samples_csv(sampling, out.csv);
    DistanceMap labeled;
    labeled.values.assign(input.mesh.vertex_count(), 0.0);
    labeled.labels = sampling.labels;
    labeled.sources = sampling.samples;
    if (!out.ply.empty()) write_label_ply(input.mesh, labeled, out.ply);
    if (!dist_csv.empty()) {
        // Per-vertex distance-to-sample-set with the nearest-sample label.
        const ToplesetOrdering ordering = compute_toplesets(input.conn, sampling.samples);
        PtpConfig run_config = config;
        run_config.with_labels = true;
        const PtpResult run = ptp_run(input.mesh, input.conn, ordering, sampling.samples, run_config);
        write_distance_csv(run.distances, dist_csv);
    }
    if (!out.stats.empty()) {
        json iterations = json::array();
        std::int64_t total_relax = 0;
        for (const FpsIterationStat& stat : sampling.history) {
            iterations.push_back({{"sources", stat.sources},
                                  {"rho", stat.rho},
                                  {"relax_calls", stat.relax_calls},
                                  {"radius", stat.radius},
                                  {"picked", stat.picked}});
            total_relax += stat.relax_calls;
        }
        write_json(json{{"manifest", manifest.to_json()},
                        {"samples", sampling.samples},
                        {"covering_radius", sampling.radius},
                        {"total_relax_calls", total_relax},
                        {"iterations", iterations}},
                   out.stats);
    }
    std::cout << "fps: samples=" << sampling.samples.size()
              << " covering_radius=" << sampling.radius << '\n';
    return exit_ok;
}

int cmd_diag(const RunManifest& manifest, const OutputPaths& out, const std::string& toplesets_csv,
             const std::string& segments_csv, const std::string& degrees_csv,
             const std::string& convergence_csv) {
    const MeshInput input = resolve_mesh(manifest);
    check_sources(manifest, input.mesh);
    const PtpConfig config = make_config(manifest);

    const ToplesetOrdering ordering = compute_toplesets(input.conn, manifest.sources);
    if (!toplesets_csv.empty()) write_topleset_csv(ordering, toplesets_csv);
    if (!segments_csv.empty()) write_segments_csv(ordering, segments_csv);
    if (!degrees_csv.empty()) write_degree_csv(input.conn, degrees_csv);

    PtpConfig run_config = config;
    run_config.record_trace = true;
    const PtpResult run = ptp_run(input.mesh, input.conn, ordering, manifest.sources, run_config);
    if (!out.trace.empty()) write_band_trace_csv(run.trace, out.trace);

    if (!convergence_csv.empty()) {
        const auto reference = builtin_reference(input, manifest.sources);
        if (!reference)
            throw InputError("--out-convergence needs a generated input with an analytic reference");
        const auto curve = convergence_curve(input.mesh, input.conn, manifest.sources, *reference,
                                             config.epsilon, config.workers);
        std::ofstream csv(convergence_csv);
        if (!csv) throw std::runtime_error(convergence_csv + ": cannot open file for writing");
        csv << "k,mape_percent\n";
        for (const ConvergencePoint& point : curve)
            csv << point.k << ',' << format_distance(point.mape) << '\n';
        if (!csv) throw std::runtime_error(convergence_csv + ": write failed");
    }

    const BoundReport report = bound_suite(input.mesh, input.conn, manifest.sources, config);
    if (!out.stats.empty()) {
        json j{{"manifest", manifest.to_json()}, {"bounds", bound_report_json(report)}};
        j.update(run_stats_json(run.distances, ordering, run.trace, run.stats));
        write_json(j, out.stats);
    }
    std::cout << "diag: n=" << report.n << " rho=" << report.rho << " K=" << report.iterations
              << " bounds=" << (report.all_ok() ? "all-clear" : "FLAGGED") << '\n';
    return exit_ok;
}

int cmd_bench(const RunManifest& manifest, const OutputPaths& out) {
    const MeshInput input = resolve_mesh(manifest);
    const PtpConfig config = make_config(manifest);

    const auto parts = split(manifest.range, ':');
    if (parts.size() != 2) throw InputError("--sources-range expects A:B");
    const long long lo = parse_integer(parts[0], "range bound");
    const long long hi = parse_integer(parts[1], "range bound");
    if (lo < 1 || hi < lo) throw InputError("--sources-range needs 1 <= A <= B");
    if (hi > input.mesh.vertex_count()) throw InputError("--sources-range exceeds the vertex count");

    // Uniformly spread source sets: the first m picks of farthest point
    // sampling, so every m reuses one deterministic sequence.
    const SamplingResult spread =
        fps(input.mesh, input.conn, static_cast<index_t>(hi), manifest.seed, config);

    std::ofstream csv;
    if (!out.csv.empty()) {
        csv.open(out.csv);
        if (!csv) throw std::runtime_error(out.csv + ": cannot open file for writing");
        csv << "m,rho,iterations,ptp_relax_calls,fm_relax_calls\n";
    }
    json rows = json::array();
    for (long long m = lo; m <= hi; ++m) {
        const std::span<const index_t> sources(spread.samples.data(), static_cast<size_t>(m));
        const ToplesetOrdering ordering = compute_toplesets(input.conn, sources);
        const PtpResult ptp = ptp_run(input.mesh, input.conn, ordering, sources, config);
        const FmResult fm = fm_run(input.mesh, input.conn, sources);
        if (csv.is_open())
            csv << m << ',' << ordering.rho() << ',' << ptp.trace.iterations << ','
                << ptp.stats.relax_calls << ',' << fm.stats.relax_calls << '\n';
        rows.push_back({{"m", m},
                        {"rho", ordering.rho()},
                        {"iterations", ptp.trace.iterations},
                        {"ptp_relax_calls", ptp.stats.relax_calls},
                        {"fm_relax_calls", fm.stats.relax_calls}});
    }
    if (csv.is_open() && !csv) throw std::runtime_error(out.csv + ": write failed");
    if (!out.stats.empty())
        write_json(json{{"manifest", manifest.to_json()}, {"rows", rows}}, out.stats);
    std::cout << "bench: m in [" << lo << ", " << hi << "] done\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geodesic distance fields on triangle meshes"};
    app.require_subcommand(1);

    RunManifest manifest;
    OutputPaths out;
    std::string dist_csv, toplesets_csv, segments_csv, degrees_csv, convergence_csv;
    std::string sources_arg;

    const auto add_input_flags = [&](CLI::App* cmd) {
        auto* mesh_opt = cmd->add_option("--mesh", manifest.mesh_path, "Mesh file (.off or .obj)");
        auto* grid_opt = cmd->add_option("--grid", manifest.grid_spec, "Generate a grid: NX,NY[,SHEAR]");
        auto* sphere_opt = cmd->add_option("--sphere", manifest.sphere_spec, "Generate an icosphere: SUBDIV");
        mesh_opt->excludes(grid_opt)->excludes(sphere_opt);
        grid_opt->excludes(sphere_opt);
        cmd->add_option("--epsilon", manifest.epsilon, "Relative-change threshold")->capture_default_str();
        cmd->add_option("--precision", manifest.precision, "single|double")->capture_default_str();
        cmd->add_option("--workers", manifest.workers, "Worker count or 'auto'")->capture_default_str();
        cmd->add_option("--stats", out.stats, "Write run statistics JSON");
        cmd->callback([&, cmd]() {
            manifest.command = cmd->get_name();
            if (manifest.mesh_path.empty() && manifest.grid_spec.empty() && manifest.sphere_spec.empty())
                throw CLI::ValidationError("input", "one of --mesh, --grid, --sphere is required");
        });
    };
    const auto add_source_flag = [&](CLI::App* cmd) {
        cmd->add_option("--source", sources_arg, "Source vertex indices I[,I...]")->required();
    };

    CLI::App* geodesic = app.add_subcommand("geodesic", "Compute a geodesic distance map");
    add_input_flags(geodesic);
    add_source_flag(geodesic);
    geodesic->add_option("--method", manifest.method, "ptp|fm|dijkstra")->capture_default_str();
    geodesic->add_option("--out-csv", out.csv, "Write per-vertex distance CSV");
    geodesic->add_option("--out-ply", out.ply, "Write distance-colored PLY");
    geodesic->add_option("--trace", out.trace, "Write band trace CSV (ptp only)");

    CLI::App* fps_cmd = app.add_subcommand("fps", "Farthest point sampling");
    add_input_flags(fps_cmd);
    fps_cmd->add_option("--count", manifest.count, "Number of samples")->required();
    fps_cmd->add_option("--seed", manifest.seed, "Seed vertex")->capture_default_str();
    fps_cmd->add_option("--out-csv", out.csv, "Write sample CSV");
    fps_cmd->add_option("--out-ply", out.ply, "Write label-colored PLY");
    fps_cmd->add_option("--out-dist", dist_csv, "Write labeled distance CSV");

    CLI::App* diag = app.add_subcommand("diag", "Topleset and bound diagnostics");
    add_input_flags(diag);
    add_source_flag(diag);
    diag->add_option("--out-toplesets", toplesets_csv, "Write topleset histogram CSV");
    diag->add_option("--out-segments", segments_csv, "Write sequence segments CSV");
    diag->add_option("--out-degrees", degrees_csv, "Write degree histogram CSV");
    diag->add_option("--out-convergence", convergence_csv,
                     "Write per-iteration MAPE CSV (generated inputs only)");
    diag->add_option("--trace", out.trace, "Write band trace CSV");

    CLI::App* bench = app.add_subcommand("bench", "Relax-count sweep over source counts");
    add_input_flags(bench);
    bench->add_option("--sources-range", manifest.range, "Source counts A:B")->required();
    bench->add_option("--seed", manifest.seed, "Seed vertex for the source spread")->capture_default_str();
    bench->add_option("--out-csv", out.csv, "Write per-m CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_input_error;
    }

    try {
        if (!sources_arg.empty()) {
            for (const std::string& part : split(sources_arg, ','))
                manifest.sources.push_back(static_cast<index_t>(parse_integer(part, "source index")));
        }
        if (app.got_subcommand(geodesic)) return cmd_geodesic(manifest, out);
        if (app.got_subcommand(fps_cmd)) return cmd_fps(manifest, out, dist_csv);
        if (app.got_subcommand(diag))
            return cmd_diag(manifest, out, toplesets_csv, segments_csv, degrees_csv, convergence_csv);
        return cmd_bench(manifest, out);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input_error;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_solver_error;
    }
}
