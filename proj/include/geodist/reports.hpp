#pragma once

#include <string>

#include "geodist/metrics.hpp"
#include "geodist/ptp.hpp"
#include "geodist/sampling.hpp"
#include "geodist/toplesets.hpp"

#include <json.hpp>

namespace geodist {

/// CSV "k,i,j,updated,max_rel_change" per iteration.
void write_band_trace_csv(const BandTrace& trace, const std::string& path);

/// CSV "topleset_index,size".
void write_topleset_csv(const ToplesetOrdering& ordering, const std::string& path);

/// CSV "start,end,class" over the classified topleset runs.
void write_segments_csv(const ToplesetOrdering& ordering, const std::string& path);

/// CSV "degree,count".
void write_degree_csv(const Connectivity& conn, const std::string& path);

/// CSV "order,vertex,insertion_radius"; the seed's insertion radius is inf.
void write_samples_csv(const SamplingResult& sampling, const std::string& path);

nlohmann::json bound_report_json(const BoundReport& report);
nlohmann::json run_stats_json(const DistanceMap& map, const ToplesetOrdering& ordering,
                              const BandTrace& trace, const PtpStats& stats);

}  // namespace geodist
