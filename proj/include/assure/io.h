#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "assure/evaluation.h"
#include "assure/lifecycle.h"

// Predictions and signals ingestion. Files ending in .jsonl or .ndjson are
// read as JSON lines; everything else as comma-separated text with a header.
// Diagnostics carry "<source>:<row>"; the CSV header is row 1.
namespace assure::io {

enum class TableFormat { kCsv, kJsonLines };

TableFormat DetectFormat(const std::filesystem::path& path);

// Whole file as bytes; IoError when unreadable.
std::string ReadFile(const std::filesystem::path& path);

// Columns sample_id, score, label, subgroup.
eval::SampleSet ParsePredictionsText(std::string_view text, TableFormat format,
                                     std::string_view source);
eval::SampleSet ParsePredictions(const std::filesystem::path& path);

// Columns snapshot_id, fdi, delta_fpr, delta_fnr, tsz, remediation_event, with
// optional r_m and worst_zone. Any das/drc columns are ignored.
std::vector<lifecycle::SignalsRecord> ParseSignalsText(std::string_view text,
                                                       TableFormat format,
                                                       std::string_view source);
std::vector<lifecycle::SignalsRecord> ParseSignals(const std::filesystem::path& path);

// Signals table in the input schema, reals at 4 decimals.
std::string WriteSignalsCsv(const std::vector<lifecycle::SignalsRecord>& records);

}  // namespace assure::io
