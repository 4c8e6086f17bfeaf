#include "infolab/record.hpp"

#include <cmath>
#include <cstdio>

namespace infolab {

namespace {

std::string metric_json(const MetricValue& v) {
  struct Visitor {
    std::string operator()(double x) const {
      return std::isfinite(x) ? format_double(x) : "\"" + format_double(x) + "\"";
    }
    std::string operator()(std::int64_t x) const { return std::to_string(x); }
    std::string operator()(bool x) const { return x ? "true" : "false"; }
    std::string operator()(const std::string& x) const { return "\"" + json_escape(x) + "\""; }
  };
  return std::visit(Visitor{}, v);
}

std::string metric_text(const MetricValue& v) {
  struct Visitor {
    std::string operator()(double x) const { return format_double(x); }
    std::string operator()(std::int64_t x) const { return std::to_string(x); }
    std::string operator()(bool x) const { return x ? "true" : "false"; }
    std::string operator()(const std::string& x) const { return x; }
  };
  return std::visit(Visitor{}, v);
}

// RFC 4180 quoting, needed only for free-text values.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

std::string emit_json(const RunRecord& r) {
  // Top-level keys written in sorted order.
  std::string out = "{\"command\":\"" + json_escape(r.command) + "\",\"params\":{";
  bool first = true;
  for (const auto& [k, v] : r.params) {
    if (!first) out += ',';
    first = false;
    out += "\"" + json_escape(k) + "\":\"" + json_escape(v) + "\"";
  }
  out += "},\"pass\":";
  out += r.pass ? (*r.pass ? "true" : "false") : "null";
  out += ",\"results\":{";
  first = true;
  for (const auto& [k, v] : r.results) {
    if (!first) out += ',';
    first = false;
    out += "\"" + json_escape(k) + "\":" + metric_json(v);
  }
  out += "},\"seed\":" + std::to_string(r.seed);
  out += ",\"version\":\"" + json_escape(r.version) + "\"";
  out += ",\"wall_time_ms\":" + std::to_string(r.wall_time_ms) + "}";
  return out;
}

std::string emit_csv(const RunRecord& r) {
  std::string out = "name,value\n";
  const auto row = [&](const std::string& name, const std::string& value) {
    out += csv_field(name) + "," + csv_field(value) + "\n";
  };
  row("command", r.command);
  row("seed", std::to_string(r.seed));
  row("version", r.version);
  row("pass", r.pass ? (*r.pass ? "true" : "false") : "");
  row("wall_time_ms", std::to_string(r.wall_time_ms));
  for (const auto& [k, v] : r.params) row("param." + k, v);
  for (const auto& [k, v] : r.results) row(k, metric_text(v));
  return out;
}

std::string emit(const RunRecord& record, RecordFormat format) {
  return format == RecordFormat::json ? emit_json(record) + "\n" : emit_csv(record);
}

}  // namespace infolab
