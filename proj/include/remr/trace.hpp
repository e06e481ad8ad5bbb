#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "remr/pmf.hpp"

namespace remr {

struct TraceRecord {
  double timestamp = 0.0;  // seconds
  std::string machine_id;
  double usage = 0.0;      // fraction of machine CPU in use
};

struct TraceSeries {
  std::vector<TraceRecord> records;
};

struct DiscretizationPolicy {
  int levels = 6;                 // available capacity mapped onto 0..levels
  double machine_capacity = 6.0;  // compute units at zero usage
};

/// Reads `timestamp,machine_id,cpu_usage` rows (header required). Rejects
/// timestamps that go backwards for a machine.
TraceSeries parse_trace_csv(std::istream& in);

/// Adapter for the Google cluster-trace task_usage table (headerless CSV):
/// column 0 start time in microseconds, column 4 machine id, column 5 mean
/// CPU usage rate. Per-task rates that share a (start time, machine) are
/// summed and capped at 1 to form machine usage.
TraceSeries parse_google_task_usage(std::istream& in);

enum class TraceFormat { csv, google };

TraceSeries load_trace(const std::filesystem::path& path, TraceFormat format = TraceFormat::csv);

/// Distinct machine ids in order of first appearance.
std::vector<std::string> machines_in(const TraceSeries& series);

/// Available-resource distribution of one machine. Each sample maps to level
/// round-half-up((1 - usage) * levels); the Pmf holds the level frequencies.
/// Throws TraceError when the machine has no records or a usage value is
/// outside [0, 1].
Pmf ingest_trace(const TraceSeries& series, std::string_view machine,
                 const DiscretizationPolicy& policy = {});

}  // namespace remr
