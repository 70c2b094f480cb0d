#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace bessel_br::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "bessel-br/1";

struct Record {
  std::string statistic;
  std::string label;
  double value;
};

struct ExperimentReport {
  std::string command;
  Json config = Json::object();       // echo of the experiment-defining options
  std::vector<Record> results;
  Json thresholds = Json::object();
  bool pass = true;
  std::optional<double> wall_seconds;  // only emitted on request
};

/// Tool version baked in at build time.
std::string tool_version();

Json to_json(const ExperimentReport& report);

/// Pretty-printed JSON; every floating-point value carries 17 significant digits.
std::string dump_json(const Json& value);

/// Flat `statistic,label,value` projection of the results.
std::string to_csv(const ExperimentReport& report);

/// Writes through a sibling temporary file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace bessel_br::report
