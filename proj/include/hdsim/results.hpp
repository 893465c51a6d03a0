#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace hdsim {

/// One output observation. Aggregate rows (per-cell means, dominance shares)
/// carry iteration = -1 and the scenario's master seed; step is -1 where no
/// generation/contest index applies.
struct ResultRow {
  std::string scenario;
  long long iteration = -1;
  std::uint64_t seed = 0;
  long long step = -1;
  std::vector<std::string> params;  // aligned with ResultTable::param_names
  std::string genome = "-";
  std::string kind;
  double value = 0.0;
};

struct ResultTable {
  std::vector<std::string> param_names;  // swept parameters, without prefix
  std::vector<ResultRow> rows;
};

/// Shortest round-trip decimal form, up to 17 significant digits ("%.17g").
std::string format_real(double value);

/// Header: scenario,iteration,seed,step[,param_<name>...],genome,kind,value
std::string csv_header(const ResultTable& table);

/// Whole table as CSV text, LF newlines, reals via format_real.
std::string to_csv(const ResultTable& table);

/// Creates parent directories and writes content in one shot; throws
/// std::runtime_error when the path cannot be opened or written, leaving no
/// partial file behind on open failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace hdsim
