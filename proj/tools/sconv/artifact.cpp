#include "artifact.hpp"

#include <sstream>
#include <stdexcept>

#include "sconv/serialize.hpp"

namespace sconv::cli {

namespace {

std::string csv_field(const Json& cell) {
  if (!cell.is_string()) return cell.dump();
  const auto& s = cell.get_ref<const std::string&>();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (const char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

}  // namespace

Artifact::Artifact(std::string command, std::string sset, std::vector<std::string> columns)
    : command_(std::move(command)), sset_(std::move(sset)), columns_(std::move(columns)) {}

void Artifact::add_row(std::vector<Json> cells) {
  if (cells.size() != columns_.size()) throw std::logic_error("artifact row width does not match its columns");
  rows_.push_back(std::move(cells));
}

std::string Artifact::csv() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << '\n';
  }
  return out.str();
}

std::string Artifact::json() const {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command_;
  j["sset"] = sset_;
  j["params"] = params_;
  if (!summary_.empty()) j["summary"] = summary_;
  auto rows = Json::array();
  for (const auto& row : rows_) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[columns_[i]] = row[i];
    rows.push_back(std::move(obj));
  }
  j["rows"] = std::move(rows);
  return j.dump(1) + "\n";
}

Json int_cell(Int v) {
  if (fits_int64(v)) return static_cast<std::int64_t>(v);
  return to_string(v);
}

}  // namespace sconv::cli
