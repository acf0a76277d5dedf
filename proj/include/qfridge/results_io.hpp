// results_io.hpp — CSV serialization of result rows plus a metadata sidecar

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qfridge/harness.hpp"

namespace qfridge {

inline constexpr const char* kToolVersion = "0.1.0";

/// Column names in output order; identical for every preset.
std::vector<std::string> result_columns();

/// Header plus one line per row; 17 significant digits, empty cells for missing values, LF endings.
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::string to_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_csv(const std::string& text);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string config_hash(const std::string& text);

/// Writes `path` and `path.meta.json` (config hash, tool version, per-row wall times).
void write_results(const std::vector<ResultRow>& rows, const std::string& path, const ExperimentConfig& config);
std::vector<ResultRow> read_results(const std::string& path);

} // namespace qfridge
