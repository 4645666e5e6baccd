#include "assure/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "assure/csv.h"
#include "assure/error.h"
#include "assure/fixed_format.h"

namespace assure::io {

namespace {

struct RawRow {
  std::size_t row = 0;
  std::map<std::string, std::string> fields;
};

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> Lines(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    lines.push_back(text.substr(start, end - start));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

[[noreturn]] void RowError(std::string_view source, std::size_t row,
                           const std::string& message) {
  throw Error(ErrorCode::kMalformedRow,
              std::string(source) + ":" + std::to_string(row) + ": " + message);
}

void RequireColumns(std::string_view source, const std::vector<std::string>& present,
                    std::initializer_list<const char*> required) {
  for (const char* name : required) {
    if (std::find(present.begin(), present.end(), name) == present.end()) {
      throw Error(ErrorCode::kMissingColumn,
                  std::string(source) + ": missing column '" + name + "'");
    }
  }
}

std::vector<RawRow> ReadCsv(std::string_view text, std::string_view source,
                            std::initializer_list<const char*> required) {
  const auto lines = Lines(text);
  std::size_t i = 0;
  while (i < lines.size() && Trim(lines[i]).empty()) ++i;
  if (i == lines.size()) throw Error(ErrorCode::kEmptyFile, std::string(source) + ": file is empty");

  const std::size_t header_row = i + 1;
  const auto header = csv::SplitLine(lines[i]);
  if (!header) RowError(source, header_row, "unterminated quote in header");
  std::vector<std::string> columns;
  for (const std::string& h : *header) columns.emplace_back(Trim(h));
  RequireColumns(source, columns, required);

  std::vector<RawRow> rows;
  for (++i; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    const std::size_t row = i + 1;
    const auto fields = csv::SplitLine(lines[i]);
    if (!fields) RowError(source, row, "unterminated quote");
    if (fields->size() != columns.size()) {
      RowError(source, row,
               "expected " + std::to_string(columns.size()) + " fields, got " +
                   std::to_string(fields->size()));
    }
    RawRow r{row, {}};
    for (std::size_t c = 0; c < columns.size(); ++c) {
      r.fields[columns[c]] = std::string(Trim((*fields)[c]));
    }
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw Error(ErrorCode::kEmptyFile, std::string(source) + ": no data rows");
  return rows;
}

std::vector<RawRow> ReadJsonLines(std::string_view text, std::string_view source,
                                  std::initializer_list<const char*> required) {
  const auto lines = Lines(text);
  std::vector<RawRow> rows;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = Trim(lines[i]);
    if (line.empty()) continue;
    const std::size_t row = i + 1;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line.begin(), line.end());
    } catch (const nlohmann::json::parse_error&) {
      RowError(source, row, "invalid JSON");
    }
    if (!obj.is_object()) RowError(source, row, "expected a JSON object");
    RawRow r{row, {}};
    std::vector<std::string> keys;
    for (const auto& item : obj.items()) {
      keys.push_back(item.key());
      const auto& v = item.value();
      std::string s;
      if (v.is_string()) {
        s = v.get<std::string>();
      } else if (v.is_boolean()) {
        s = v.get<bool>() ? "1" : "0";
      } else if (v.is_number()) {
        s = v.dump();
      } else if (!v.is_null()) {
        RowError(source, row, "field '" + item.key() + "' must be a scalar");
      }
      r.fields[item.key()] = std::move(s);
    }
    try {
      RequireColumns(source, keys, required);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " at row " + std::to_string(row));
    }
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw Error(ErrorCode::kEmptyFile, std::string(source) + ": no data rows");
  return rows;
}

std::vector<RawRow> ReadTable(std::string_view text, TableFormat format,
                              std::string_view source,
                              std::initializer_list<const char*> required) {
  return format == TableFormat::kJsonLines ? ReadJsonLines(text, source, required)
                                           : ReadCsv(text, source, required);
}

std::optional<double> ParseReal(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

double UnitField(std::string_view source, const RawRow& r, const char* name) {
  const std::string& text = r.fields.at(name);
  const auto v = ParseReal(text);
  if (!v) RowError(source, r.row, std::string(name) + ": '" + text + "' is not a number");
  if (*v < 0.0 || *v > 1.0) {
    RowError(source, r.row, std::string(name) + ": " + text + " is outside [0,1]");
  }
  return *v;
}

bool BinaryField(std::string_view source, const RawRow& r, const char* name) {
  const std::string& text = r.fields.at(name);
  if (text == "0") return false;
  if (text == "1") return true;
  RowError(source, r.row, std::string(name) + ": '" + text + "' must be 0 or 1");
}

const std::string* Optional(const RawRow& r, const char* name) {
  const auto it = r.fields.find(name);
  if (it == r.fields.end() || it->second.empty()) return nullptr;
  return &it->second;
}

}  // namespace

TableFormat DetectFormat(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  return (ext == ".jsonl" || ext == ".ndjson") ? TableFormat::kJsonLines : TableFormat::kCsv;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, path.string() + ": read failed");
  return ss.str();
}

eval::SampleSet ParsePredictionsText(std::string_view text, TableFormat format,
                                     std::string_view source) {
  const auto rows =
      ReadTable(text, format, source, {"sample_id", "score", "label", "subgroup"});
  eval::SampleSet samples;
  samples.reserve(rows.size());
  for (const RawRow& r : rows) {
    eval::Sample s;
    s.sample_id = r.fields.at("sample_id");
    if (s.sample_id.empty()) RowError(source, r.row, "sample_id: empty");
    s.score = UnitField(source, r, "score");
    s.label = BinaryField(source, r, "label") ? 1 : 0;
    s.subgroup = r.fields.at("subgroup");
    if (s.subgroup.empty()) RowError(source, r.row, "subgroup: empty");
    samples.push_back(std::move(s));
  }
  return samples;
}

eval::SampleSet ParsePredictions(const std::filesystem::path& path) {
  return ParsePredictionsText(ReadFile(path), DetectFormat(path), path.string());
}

std::vector<lifecycle::SignalsRecord> ParseSignalsText(std::string_view text,
                                                       TableFormat format,
                                                       std::string_view source) {
  const auto rows = ReadTable(text, format, source,
                              {"snapshot_id", "fdi", "delta_fpr", "delta_fnr", "tsz",
                               "remediation_event"});
  std::vector<lifecycle::SignalsRecord> out;
  out.reserve(rows.size());
  for (const RawRow& r : rows) {
    lifecycle::SignalsRecord rec;
    rec.snapshot_id = r.fields.at("snapshot_id");
    if (rec.snapshot_id.empty()) RowError(source, r.row, "snapshot_id: empty");
    AssuranceSignals& s = rec.signals;
    s.fdi = UnitField(source, r, "fdi");
    s.delta_fpr = UnitField(source, r, "delta_fpr");
    s.delta_fnr = UnitField(source, r, "delta_fnr");
    s.tsz = UnitField(source, r, "tsz");
    s.remediation_event = BinaryField(source, r, "remediation_event");
    if (const std::string* rm = Optional(r, "r_m")) {
      const auto v = ParseReal(*rm);
      if (!v || *v < -1.0 || *v > 1.0) {
        RowError(source, r.row, "r_m: '" + *rm + "' must be a number in [-1,1]");
      }
      if (!s.remediation_event) {
        RowError(source, r.row, "r_m: only allowed when remediation_event is 1");
      }
      s.r_m = *v;
    }
    if (const std::string* z = Optional(r, "worst_zone")) {
      try {
        s.worst_zone = stability::ParseZone(*z);
      } catch (const Error& e) {
        RowError(source, r.row, std::string("worst_zone: ") + e.what());
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<lifecycle::SignalsRecord> ParseSignals(const std::filesystem::path& path) {
  return ParseSignalsText(ReadFile(path), DetectFormat(path), path.string());
}

std::string WriteSignalsCsv(const std::vector<lifecycle::SignalsRecord>& records) {
  std::string out =
      "snapshot_id,fdi,delta_fpr,delta_fnr,tsz,remediation_event,r_m,worst_zone\n";
  for (const auto& rec : records) {
    const AssuranceSignals& s = rec.signals;
    out += csv::Escape(rec.snapshot_id);
    for (double v : {s.fdi, s.delta_fpr, s.delta_fnr, s.tsz}) out += ',' + FormatFixed4(v);
    out += s.remediation_event ? ",1," : ",0,";
    if (s.r_m) out += FormatFixed4(*s.r_m);
    out += ',';
    if (s.worst_zone) out += stability::ZoneName(*s.worst_zone);
    out += '\n';
  }
  return out;
}

}  // namespace assure::io
