#include "table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>

#include "plap/error.hpp"

#ifndef PLAP_VERSION
#define PLAP_VERSION "unknown"
#endif

namespace plap::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string csv_cell(const Json& cell) {
  if (cell.is_number_float()) return format_double(cell.get<double>());
  if (cell.is_number_integer()) return std::to_string(cell.get<long long>());
  if (cell.is_number_unsigned()) return std::to_string(cell.get<unsigned long long>());
  if (cell.is_boolean()) return cell.get<bool>() ? "true" : "false";
  if (cell.is_string()) return cell.get<std::string>();
  if (cell.is_null()) return "nan";
  return cell.dump();
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_cell(row[c]);
    out << '\n';
  }
}

void write_json(const Json& meta, const std::vector<std::pair<std::string, const Table*>>& tables,
                const Json& extra, std::ostream& out) {
  Json doc;
  doc["meta"] = meta;
  for (const auto& [name, table] : tables) {
    Json records = Json::array();
    for (const auto& row : table->rows) {
      Json rec = Json::object();
      for (std::size_t c = 0; c < row.size() && c < table->columns.size(); ++c) rec[table->columns[c]] = row[c];
      records.push_back(std::move(rec));
    }
    doc[name] = std::move(records);
  }
  for (const auto& [key, value] : extra.items()) doc[key] = value;
  out << doc.dump(2) << '\n';
}

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("PLAP_OUTPUT_DIR"); dir != nullptr && *dir != '\0') p = std::filesystem::path(dir) / p;
  }
  return p;
}

std::filesystem::path sidecar(const std::filesystem::path& main, const std::string& tag) {
  std::filesystem::path out = main;
  out.replace_filename(main.stem().string() + "." + tag + (main.has_extension() ? main.extension().string() : ".csv"));
  return out;
}

Sink::Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
  if (path.empty() || path == "-") return;
  path_ = resolve_output(path);
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  file_ = std::make_unique<std::ofstream>(path_, std::ios::binary);
  if (!*file_) throw Error(ErrorKind::InvalidArgument, "cannot open " + path_.string() + " for writing");
  stream_ = file_.get();
}

Json meta_header(const std::string& command) {
  Json meta;
  meta["tool"] = "plap";
  meta["version"] = PLAP_VERSION;
  meta["command"] = command;
  return meta;
}

}  // namespace plap::cli
