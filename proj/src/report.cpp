#include "bessel_br/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace bessel_br::report {

#ifndef BESSEL_BR_VERSION
#define BESSEL_BR_VERSION "0.0.0"
#endif

std::string tool_version() { return BESSEL_BR_VERSION; }

namespace {

std::string format_real(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump_into(const Json& v, int depth, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  if (v.is_object()) {
    if (v.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (const auto& [key, item] : v.items()) {
      if (!first) os << ",\n";
      first = false;
      os << pad << Json(key).dump() << ": ";
      dump_into(item, depth + 1, os);
    }
    os << "\n" << close_pad << "}";
  } else if (v.is_array()) {
    if (v.empty()) {
      os << "[]";
      return;
    }
    os << "[\n";
    bool first = true;
    for (const auto& item : v) {
      if (!first) os << ",\n";
      first = false;
      os << pad;
      dump_into(item, depth + 1, os);
    }
    os << "\n" << close_pad << "]";
  } else if (v.is_number_float()) {
    os << format_real(v.get<double>());
  } else {
    os << v.dump();
  }
}

}  // namespace

Json to_json(const ExperimentReport& report) {
  Json j;
  j["schema"] = kSchema;
  j["tool_version"] = tool_version();
  j["command"] = report.command;
  j["config"] = report.config;
  Json results = Json::array();
  for (const auto& r : report.results)
    results.push_back({{"statistic", r.statistic}, {"label", r.label}, {"value", r.value}});
  j["results"] = std::move(results);
  j["thresholds"] = report.thresholds;
  j["pass"] = report.pass;
  if (report.wall_seconds) j["timings"] = {{"wall_seconds", *report.wall_seconds}};
  return j;
}

std::string dump_json(const Json& value) {
  std::ostringstream os;
  dump_into(value, 0, os);
  os << "\n";
  return os.str();
}

std::string to_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "statistic,label,value\n";
  for (const auto& r : report.results) {
    os << r.statistic << ',' << r.label << ',' << format_real(r.value) << '\n';
  }
  return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw std::system_error(errno, std::generic_category(), "cannot open " + tmp.string());
    file << contents;
    file.flush();
    if (!file) throw std::system_error(errno, std::generic_category(), "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace bessel_br::report
