#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sconv/int128.hpp"

namespace sconv::cli {

using Json = nlohmann::ordered_json;

/// Machine-readable command output: {schema_version, command, sset, params, rows}
/// as JSON, or a header line plus one line per row as CSV.
class Artifact {
 public:
  Artifact(std::string command, std::string sset, std::vector<std::string> columns);

  Json& params() { return params_; }
  Json& summary() { return summary_; }
  void add_row(std::vector<Json> cells);
  [[nodiscard]] std::size_t size() const { return rows_.size(); }

  [[nodiscard]] std::string csv() const;
  [[nodiscard]] std::string json() const;

 private:
  std::string command_;
  std::string sset_;
  std::vector<std::string> columns_;
  Json params_ = Json::object();
  Json summary_ = Json::object();
  std::vector<std::vector<Json>> rows_;
};

/// int64 number when it fits, decimal string otherwise.
Json int_cell(Int v);

}  // namespace sconv::cli
