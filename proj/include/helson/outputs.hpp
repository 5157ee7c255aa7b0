#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "helson/run_config.hpp"

namespace helson {

/// A command result: a JSON document whose optional "table" member
/// ({"columns": [...], "rows": [[...], ...]}) is the CSV rendering.
using ResultDocument = nlohmann::json;

nlohmann::json make_table(const std::vector<std::string>& columns);

/// CSV with a header row; reals at 17 significant digits, booleans as true/false.
std::string render_csv(const nlohmann::json& table);

/// Full JSON output: result plus config echo, version and cache key.
nlohmann::json output_document(const ResultDocument& result, const RunConfig& config);

/// Writes via a temporary file in the same directory and a rename.
void atomic_write(const std::filesystem::path& path, const std::string& bytes);

/// Cache directory: HELSON_CACHE_DIR if set, otherwise config.cache_dir.
std::filesystem::path resolve_cache_dir(const RunConfig& config);
std::filesystem::path cache_path(const RunConfig& config);
std::optional<nlohmann::json> cache_lookup(const RunConfig& config);
void cache_store(const RunConfig& config, const nlohmann::json& document);

/// `<path>/<command>-<key>.<ext>`.
std::filesystem::path output_path(const RunConfig& config, const std::string& ext);

/// Writes `<command>-<key>.json` always and `.csv` when the document has a
/// table and format is csv. Returns the written paths.
std::vector<std::filesystem::path> write_outputs(const nlohmann::json& document, const RunConfig& config);

}  // namespace helson
