#include "hdsim/results.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace hdsim {

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string csv_header(const ResultTable& table) {
  std::string header = "scenario,iteration,seed,step";
  for (const auto& name : table.param_names) {
    header += ",param_";
    header += name;
  }
  header += ",genome,kind,value";
  return header;
}

std::string to_csv(const ResultTable& table) {
  std::string out = csv_header(table);
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.params.size() != table.param_names.size()) {
      throw std::invalid_argument("result row: param count does not match header");
    }
    out += row.scenario;
    out += ',';
    out += std::to_string(row.iteration);
    out += ',';
    out += std::to_string(row.seed);
    out += ',';
    out += std::to_string(row.step);
    for (const auto& p : row.params) {
      out += ',';
      out += p;
    }
    out += ',';
    out += row.genome;
    out += ',';
    out += row.kind;
    out += ',';
    out += format_real(row.value);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out.is_open()) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out.good()) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

}  // namespace hdsim
