#include "nhll/io.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace nhll {

namespace {

std::ofstream open_for_writing(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

std::string config_header(const json& config) { return "# config: " + config.dump(); }

CsvWriter::CsvWriter(const std::filesystem::path& path, const json& config, std::vector<std::string> columns)
    : out_(open_for_writing(path)), path_(path), columns_(columns.size()) {
  out_ << config_header(config) << '\n';
  for (std::size_t k = 0; k < columns.size(); ++k) out_ << (k ? "," : "") << columns[k];
  out_ << '\n' << std::setprecision(17);
}

void CsvWriter::separator() {
  if (filled_ >= columns_) throw std::logic_error(path_.string() + ": too many values in row");
  if (filled_ > 0) out_ << ',';
  ++filled_;
}

CsvWriter& CsvWriter::operator<<(double value) {
  separator();
  out_ << value;
  return *this;
}

CsvWriter& CsvWriter::operator<<(long long value) {
  separator();
  out_ << value;
  return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& value) {
  separator();
  out_ << value;
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_) throw std::logic_error(path_.string() + ": incomplete row");
  out_ << '\n';
  filled_ = 0;
  ++rows_;
  if (!out_) throw std::runtime_error("write failed for " + path_.string());
}

void write_json(const std::filesystem::path& path, const json& config, json body) {
  body["config"] = config;
  std::ofstream out = open_for_writing(path);
  out << body.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_matrix_dump(const std::filesystem::path& path, const SparseHamiltonian& H, const json& config) {
  std::ofstream out = open_for_writing(path);
  json meta = describe(H.field, H.lattice);
  meta["config"] = config;
  out << "# dimension " << H.dimension() << ' ' << meta.dump() << '\n' << std::setprecision(17);
  for (const auto& t : H.entries()) out << t.row() << ' ' << t.col() << ' ' << t.value().real() << ' ' << t.value().imag() << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

SparseMatrixC read_matrix_dump(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  std::istringstream head(line);
  std::string hash, word;
  Index n = -1;
  head >> hash >> word >> n;
  if (hash != "#" || word != "dimension" || n < 0) throw std::runtime_error(path.string() + ": bad matrix header");
  std::vector<Eigen::Triplet<Complex>> triplets;
  Index r, c;
  double re, im;
  while (in >> r >> c >> re >> im) triplets.emplace_back(r, c, Complex(re, im));
  SparseMatrixC M(n, n);
  M.setFromTriplets(triplets.begin(), triplets.end());
  return M;
}

json describe(const FieldConfig& field, const LatticeSpec& lattice) {
  return json{{"B_re", field.B().real()}, {"B_im", field.B().imag()}, {"E_x", field.E().x()},
              {"E_y", field.E().y()},     {"gauge", to_string(field.gauge())}, {"nx", lattice.nx},
              {"ny", lattice.ny},         {"origin", "centered"},             {"boundary", "open"}};
}

std::vector<std::vector<std::string>> read_csv_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace nhll
