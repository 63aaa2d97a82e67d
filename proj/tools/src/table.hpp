#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace plap::cli {

using Json = nlohmann::ordered_json;

/// Column-major description, row-major data; cells are numbers, strings or booleans.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;

  void add(std::vector<Json> row) { rows.push_back(std::move(row)); }
};

enum class Format { Csv, Json };

/// Header row, comma separated, LF line endings, doubles at 17 significant digits.
void write_csv(const Table& table, std::ostream& out);

/// {"meta": ..., "<name>": [records], ...} with one object per row.
void write_json(const Json& meta, const std::vector<std::pair<std::string, const Table*>>& tables,
                const Json& extra, std::ostream& out);

/// A double formatted with %.17g ("nan", "inf" for non-finite values).
std::string format_double(double v);

/// Resolves an output path: relative paths go under $PLAP_OUTPUT_DIR when set.
std::filesystem::path resolve_output(const std::string& path);

/// Sibling path: "dir/name.csv" + "thresholds" -> "dir/name.thresholds.csv".
std::filesystem::path sidecar(const std::filesystem::path& main, const std::string& tag);

/// Where output goes: stdout or a file opened for writing.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback);
  std::ostream& stream() { return *stream_; }
  bool to_file() const { return !path_.empty(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

/// Common "meta" header: tool, version, command and any extra fields.
Json meta_header(const std::string& command);

}  // namespace plap::cli
