// CSV/JSON output with a provenance header, and the coordinate-list matrix dump.
#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include "nhll/hofstadter.hpp"

namespace nhll {

using nlohmann::json;

/// "# config: {...}" (single line).
std::string config_header(const json& config);

/// Comma-separated file whose first line is config_header(config) and second
/// line the column names. Numbers are written with 17 significant digits.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const json& config, std::vector<std::string> columns);

  CsvWriter& operator<<(double value);
  CsvWriter& operator<<(long long value);
  CsvWriter& operator<<(int value) { return *this << static_cast<long long>(value); }
  CsvWriter& operator<<(const std::string& value);
  /// Ends the row; throws std::logic_error if the column count is off.
  void end_row();

  std::size_t rows() const { return rows_; }

 private:
  void separator();

  std::ofstream out_;
  std::filesystem::path path_;
  std::size_t columns_;
  std::size_t filled_ = 0;
  std::size_t rows_ = 0;
};

/// Writes pretty-printed JSON; the config is stored under "config".
void write_json(const std::filesystem::path& path, const json& config, json body);

/// Header "# dimension <n> <metadata json>", then one "row col re im" line per entry.
void write_matrix_dump(const std::filesystem::path& path, const SparseHamiltonian& H, const json& config);

/// Reads a matrix written by write_matrix_dump().
SparseMatrixC read_matrix_dump(const std::filesystem::path& path);

/// JSON description of a field and lattice.
json describe(const FieldConfig& field, const LatticeSpec& lattice);

/// Reads all data rows of a CSV written by CsvWriter (comment and header lines skipped).
std::vector<std::vector<std::string>> read_csv_rows(const std::filesystem::path& path);

}  // namespace nhll
