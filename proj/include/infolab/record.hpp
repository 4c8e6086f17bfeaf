#pragma once

// One result record per logical check, serialized as a single JSON object
// (keys sorted, floats with 17 significant digits) or as name,value CSV rows.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>

namespace infolab {

using MetricValue = std::variant<double, std::int64_t, bool, std::string>;

struct RunRecord {
  std::string command;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
  std::string version;
  std::map<std::string, MetricValue> results;
  std::optional<bool> pass;
  std::int64_t wall_time_ms = 0;

  void set(const std::string& name, double v) { results[name] = v; }
  void set(const std::string& name, std::int64_t v) { results[name] = v; }
  void set(const std::string& name, int v) { results[name] = static_cast<std::int64_t>(v); }
  void set(const std::string& name, std::uint64_t v) {
    results[name] = static_cast<std::int64_t>(v);
  }
  void set(const std::string& name, bool v) { results[name] = v; }
  void set(const std::string& name, std::string v) { results[name] = std::move(v); }
  void set(const std::string& name, const char* v) { results[name] = std::string(v); }
};

enum class RecordFormat { json, csv };

/// "%.17g"; non-finite values become "inf", "-inf" or "nan".
std::string format_double(double x);
std::string json_escape(const std::string& s);

/// Single-line JSON object, no trailing newline.
std::string emit_json(const RunRecord& record);
/// Header `name,value`, then metadata rows (command, seed, version, pass,
/// wall_time_ms, param.<key>) and one row per metric.
std::string emit_csv(const RunRecord& record);
std::string emit(const RunRecord& record, RecordFormat format);

}  // namespace infolab
