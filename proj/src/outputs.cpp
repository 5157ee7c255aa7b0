#include "helson/outputs.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "helson/csv.hpp"
#include "helson/errors.hpp"

namespace helson {
namespace fs = std::filesystem;

namespace {

std::string render_cell(const nlohmann::json& v) {
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_real(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  throw NumericError("csv: unsupported cell type");
}

}  // namespace

nlohmann::json make_table(const std::vector<std::string>& columns) {
  return {{"columns", columns}, {"rows", nlohmann::json::array()}};
}

std::string render_csv(const nlohmann::json& table) {
  std::string out;
  const auto& cols = table.at("columns");
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i].get<std::string>();
  out += '\n';
  for (const auto& row : table.at("rows")) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + render_cell(row[i]);
    out += '\n';
  }
  return out;
}

nlohmann::json output_document(const ResultDocument& result, const RunConfig& config) {
  nlohmann::json doc = result;
  doc["config"] = to_json(config);
  doc["version"] = version();
  doc["cache_key"] = cache_key(config);
  return doc;
}

void atomic_write(const fs::path& path, const std::string& bytes) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw NumericError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw NumericError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw NumericError("write failed: " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw NumericError("cannot rename into " + path.string() + ": " + ec.message());
  }
}

fs::path resolve_cache_dir(const RunConfig& config) {
  if (const char* env = std::getenv("HELSON_CACHE_DIR"); env && *env) return env;
  return config.cache_dir;
}

fs::path cache_path(const RunConfig& config) {
  return resolve_cache_dir(config) / (to_string(config.command) + "-" + cache_key(config) + ".json");
}

std::optional<nlohmann::json> cache_lookup(const RunConfig& config) {
  std::ifstream in(cache_path(config), std::ios::binary);
  if (!in) return std::nullopt;
  try {
    nlohmann::json doc = nlohmann::json::parse(in);
    if (doc.value("cache_key", "") != cache_key(config)) return std::nullopt;
    return doc;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;  // unreadable entry: recompute
  }
}

void cache_store(const RunConfig& config, const nlohmann::json& document) {
  atomic_write(cache_path(config), document.dump(2) + "\n");
}

fs::path output_path(const RunConfig& config, const std::string& ext) {
  return fs::path(config.path) / (to_string(config.command) + "-" + cache_key(config) + "." + ext);
}

std::vector<fs::path> write_outputs(const nlohmann::json& document, const RunConfig& config) {
  std::vector<fs::path> written;
  if (config.format == "csv" && document.contains("table")) {
    written.push_back(output_path(config, "csv"));
    atomic_write(written.back(), render_csv(document.at("table")));
  }
  written.push_back(output_path(config, "json"));
  atomic_write(written.back(), document.dump(2) + "\n");
  return written;
}

}  // namespace helson
