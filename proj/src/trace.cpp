#include "remr/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "remr/errors.hpp"

namespace remr {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view field, std::size_t line_no, const char* what) {
  field = trim(field);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw TraceError("line " + std::to_string(line_no) + ": " + what + " '" + std::string(field) +
                     "' is not a number");
  }
  return value;
}

void check_order(TraceSeries& series) {
  std::unordered_map<std::string, double> last;
  for (const auto& r : series.records) {
    auto [it, inserted] = last.try_emplace(r.machine_id, r.timestamp);
    if (!inserted) {
      if (r.timestamp < it->second) {
        throw TraceError("timestamps go backwards for machine '" + r.machine_id + "'");
      }
      it->second = r.timestamp;
    }
  }
}

}  // namespace

TraceSeries parse_trace_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  const auto header = split_fields(line);
  if (header.size() != 3 || trim(header[0]) != "timestamp" || trim(header[1]) != "machine_id" ||
      trim(header[2]) != "cpu_usage") {
    throw TraceError("expected header 'timestamp,machine_id,cpu_usage'");
  }

  TraceSeries series;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 3) {
      throw TraceError("line " + std::to_string(line_no) + ": expected 3 fields");
    }
    TraceRecord r;
    r.timestamp = parse_double(fields[0], line_no, "timestamp");
    r.machine_id = std::string(trim(fields[1]));
    r.usage = parse_double(fields[2], line_no, "cpu_usage");
    if (r.machine_id.empty()) throw TraceError("line " + std::to_string(line_no) + ": empty machine_id");
    series.records.push_back(std::move(r));
  }
  check_order(series);
  return series;
}

TraceSeries parse_google_task_usage(std::istream& in) {
  // (start time, machine) -> summed usage; map keeps time order
  std::map<std::pair<double, std::string>, double> usage;
  std::vector<std::string> order;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() < 6) {
      throw TraceError("line " + std::to_string(line_no) + ": task_usage rows need at least 6 fields");
    }
    const std::string machine(trim(fields[4]));
    if (machine.empty()) continue;  // unscheduled tasks carry no machine
    const double start = parse_double(fields[0], line_no, "start time") / 1e6;
    const std::string_view rate = trim(fields[5]);
    if (rate.empty()) continue;
    usage[{start, machine}] += parse_double(rate, line_no, "cpu rate");
    if (std::find(order.begin(), order.end(), machine) == order.end()) order.push_back(machine);
  }

  TraceSeries series;
  for (const auto& [key, value] : usage) {
    series.records.push_back({key.first, key.second, std::min(value, 1.0)});
  }
  // first-appearance order of machines is kept stable for equal timestamps
  std::stable_sort(series.records.begin(), series.records.end(),
                   [&](const TraceRecord& a, const TraceRecord& b) {
                     if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                     auto ia = std::find(order.begin(), order.end(), a.machine_id);
                     auto ib = std::find(order.begin(), order.end(), b.machine_id);
                     return ia < ib;
                   });
  return series;
}

TraceSeries load_trace(const std::filesystem::path& path, TraceFormat format) {
  std::ifstream in(path);
  if (!in) throw TraceError("cannot open trace file '" + path.string() + "'");
  return format == TraceFormat::google ? parse_google_task_usage(in) : parse_trace_csv(in);
}

std::vector<std::string> machines_in(const TraceSeries& series) {
  std::vector<std::string> out;
  for (const auto& r : series.records) {
    if (std::find(out.begin(), out.end(), r.machine_id) == out.end()) out.push_back(r.machine_id);
  }
  return out;
}

Pmf ingest_trace(const TraceSeries& series, std::string_view machine,
                 const DiscretizationPolicy& policy) {
  if (policy.levels < 1) throw TraceError("discretization needs at least one level");
  if (!(policy.machine_capacity > 0.0)) throw TraceError("machine capacity must be positive");

  std::map<int, std::size_t> counts;
  std::size_t total = 0;
  for (const auto& r : series.records) {
    if (r.machine_id != machine) continue;
    if (!(r.usage >= 0.0 && r.usage <= 1.0)) {
      throw TraceError("usage " + std::to_string(r.usage) + " outside [0, 1] for machine '" +
                       std::string(machine) + "'");
    }
    const double available = policy.machine_capacity * (1.0 - r.usage);
    const double scaled = available / policy.machine_capacity * policy.levels;
    // half-up; the epsilon keeps exact halves from falling below .5 after scaling
    const int level = static_cast<int>(std::floor(scaled + 0.5 + 1e-9));
    ++counts[std::clamp(level, 0, policy.levels)];
    ++total;
  }
  if (total == 0) throw TraceError("no records for machine '" + std::string(machine) + "'");

  std::vector<Pmf::Entry> entries;
  for (const auto& [level, count] : counts) {
    entries.emplace_back(level, static_cast<double>(count) / static_cast<double>(total));
  }
  return Pmf(std::move(entries));
}

}  // namespace remr
