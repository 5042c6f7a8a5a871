#include "geodist/reports.hpp"

#include <fstream>
#include <stdexcept>

#include "geodist/mesh_io.hpp"

namespace geodist {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open file for writing");
    return out;
}

}  // namespace

void write_band_trace_csv(const BandTrace& trace, const std::string& path) {
    auto out = open_out(path);
    out << "k,i,j,updated,max_rel_change\n";
    for (const BandRow& row : trace.rows) {
        out << row.k << ',' << row.i << ',' << row.j << ',' << row.updated << ','
            << format_distance(row.max_rel_change) << '\n';
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

void write_topleset_csv(const ToplesetOrdering& ordering, const std::string& path) {
    auto out = open_out(path);
    out << "topleset_index,size\n";
    for (index_t r = 0; r < ordering.rho(); ++r) out << r << ',' << ordering.level_size(r) << '\n';
    if (!out) throw std::runtime_error(path + ": write failed");
}

void write_segments_csv(const ToplesetOrdering& ordering, const std::string& path) {
    auto out = open_out(path);
    out << "start,end,class\n";
    for (const SequenceSegment& seg : classify_sequences(ordering))
        out << seg.start << ',' << seg.end << ',' << to_string(seg.cls) << '\n';
    if (!out) throw std::runtime_error(path + ": write failed");
}

void write_degree_csv(const Connectivity& conn, const std::string& path) {
    auto out = open_out(path);
    out << "degree,count\n";
    for (const auto& [degree, count] : degree_histogram(conn)) out << degree << ',' << count << '\n';
    if (!out) throw std::runtime_error(path + ": write failed");
}

void write_samples_csv(const SamplingResult& sampling, const std::string& path) {
    auto out = open_out(path);
    out << "order,vertex,insertion_radius\n";
    for (size_t i = 0; i < sampling.samples.size(); ++i) {
        const double radius = i == 0 ? infinite_distance : sampling.history[i - 1].radius;
        out << i << ',' << sampling.samples[i] << ',' << format_distance(radius) << '\n';
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

nlohmann::json bound_report_json(const BoundReport& report) {
    nlohmann::json per_topleset = nlohmann::json::array();
    for (const ToplesetFixRow& row : report.per_topleset) {
        per_topleset.push_back({{"r", row.r},
                                {"fixed_at", row.fixed_at},
                                {"bound", row.bound},
                                {"max_degree", row.max_degree},
                                {"ok", row.ok}});
    }
    return {{"n", report.n},
            {"rho", report.rho},
            {"iterations", report.iterations},
            {"max_degree", report.max_degree},
            {"rho_over_sqrt_n", report.rho_over_sqrt_n},
            {"iterations_over_rho", report.iterations_over_rho},
            {"rho_over_log2_n", report.rho_over_log2_n},
            {"rho_upper_ok", report.rho_upper_ok},
            {"iterations_ok", report.iterations_ok},
            {"log_base", report.log_base},
            {"log_b_n", report.log_b_n},
            {"rho_lower_ok", report.rho_lower_ok},
            {"fix_bounds_ok", report.fix_bounds_ok},
            {"all_ok", report.all_ok()},
            {"per_topleset", per_topleset}};
}

nlohmann::json run_stats_json(const DistanceMap& map, const ToplesetOrdering& ordering,
                              const BandTrace& trace, const PtpStats& stats) {
    return {{"n", map.size()},
            {"rho", ordering.rho()},
            {"iterations", trace.iterations},
            {"unreached", map.unreached},
            {"precision", map.precision == Precision::single_fp ? "single" : "double"},
            {"epsilon", stats.epsilon},
            {"workers", stats.workers},
            {"relax_calls", stats.relax_calls},
            {"degenerate_calls", stats.degenerate_calls},
            {"wall_seconds", stats.wall_seconds}};
}

}  // namespace geodist
