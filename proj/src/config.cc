#include "assure/config.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"

#include "assure/error.h"
#include "assure/fixed_format.h"

namespace assure {

namespace {

using nlohmann::json;

[[noreturn]] void Invalid(std::string_view source, const std::string& field,
                          const std::string& message) {
  throw Error(ErrorCode::kConfigInvalid,
              std::string(source) + ": " + field + ": " + message);
}

void RejectUnknown(std::string_view source, const std::string& prefix, const json& obj,
                   std::initializer_list<const char*> known) {
  if (!obj.is_object()) Invalid(source, prefix, "expected an object");
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      Invalid(source, prefix.empty() ? item.key() : prefix + "." + item.key(),
              "unknown key");
    }
  }
}

double Number(std::string_view source, const std::string& field, const json& v) {
  if (!v.is_number()) Invalid(source, field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) Invalid(source, field, "must be finite");
  return d;
}

bool Boolean(std::string_view source, const std::string& field, const json& v) {
  if (!v.is_boolean()) Invalid(source, field, "expected true or false");
  return v.get<bool>();
}

std::string String(std::string_view source, const std::string& field, const json& v) {
  if (!v.is_string()) Invalid(source, field, "expected a string");
  return v.get<std::string>();
}

// Reads obj[key] into `out` when present.
void ReadNumber(std::string_view source, const std::string& prefix, const json& obj,
                const char* key, double& out) {
  if (obj.contains(key)) out = Number(source, prefix + "." + key, obj.at(key));
}

void ReadCuts(std::string_view source, const std::string& field, const json& v,
              SeverityCuts& out) {
  if (!v.is_array() || v.size() != 3) Invalid(source, field, "expected 3 numbers");
  for (std::size_t i = 0; i < 3; ++i) out[i] = Number(source, field, v[i]);
}

// Rewraps module validation errors as ConfigInvalid tagged with the field.
void Check(std::string_view source, const std::string& field,
           const std::function<void()>& validate) {
  try {
    validate();
  } catch (const Error& e) {
    Invalid(source, field, e.what());
  }
}

std::string Cuts(const SeverityCuts& c) {
  return FormatShortest(c[0]) + "/" + FormatShortest(c[1]) + "/" + FormatShortest(c[2]);
}

void ValidateConfigFrom(const EngineConfig& c, std::string_view source) {
  Check(source, "weights", [&] { ValidateWeights(c.weights); });
  Check(source, "drc_bands", [&] { ValidateBands(c.bands); });
  Check(source, "zones", [&] { stability::ValidateZoneConfig(c.zones); });
  Check(source, "sweep", [&] { stability::GridThresholds(c.sweep); });
  Check(source, "ges", [&] { ValidateGesThresholds(c.ges); });
  Check(source, "lifecycle", [&] { lifecycle::ValidateRules(c.rules()); });
  for (eval::GapMetric m : eval::kAllGapMetrics) {
    const auto it = c.tolerances.find(std::string(eval::GapName(m)));
    if (it == c.tolerances.end()) {
      Invalid(source, "fdi.tolerances", "missing " + std::string(eval::GapName(m)));
    }
  }
  for (const auto& [metric, tau] : c.tolerances) {
    if (!(tau >= 0.0 && tau <= 1.0)) {
      Invalid(source, "fdi.tolerances." + metric, "must be in [0,1]");
    }
  }
  if (c.min_support < 1) Invalid(source, "min_support", "must be >= 1");
  if (!(c.s_ref > 0.0) || !std::isfinite(c.s_ref)) Invalid(source, "tsz.s_ref", "must be > 0");
}

}  // namespace

EngineConfig DefaultConfig() {
  EngineConfig c;
  for (eval::GapMetric m : eval::kAllGapMetrics) {
    c.tolerances[std::string(eval::GapName(m))] = fdi::kDefaultTolerance;
  }
  return c;
}

void ValidateConfig(const EngineConfig& config) { ValidateConfigFrom(config, "config"); }

EngineConfig ParseConfigJson(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    Invalid(source, "<document>", e.what());
  }
  RejectUnknown(source, "", doc,
                {"weights", "drc_bands", "zones", "sweep", "fdi", "ges", "lifecycle",
                 "min_support", "tsz"});

  EngineConfig c = DefaultConfig();
  if (doc.contains("weights")) {
    const json& w = doc["weights"];
    RejectUnknown(source, "weights", w, {"alpha", "beta", "gamma", "delta"});
    ReadNumber(source, "weights", w, "alpha", c.weights.alpha);
    ReadNumber(source, "weights", w, "beta", c.weights.beta);
    ReadNumber(source, "weights", w, "gamma", c.weights.gamma);
    ReadNumber(source, "weights", w, "delta", c.weights.delta);
  }
  if (doc.contains("drc_bands")) {
    const json& b = doc["drc_bands"];
    RejectUnknown(source, "drc_bands", b,
                  {"deployable", "restricted", "reassessment", "escalated"});
    ReadNumber(source, "drc_bands", b, "deployable", c.bands.deployable);
    ReadNumber(source, "drc_bands", b, "restricted", c.bands.restricted);
    ReadNumber(source, "drc_bands", b, "reassessment", c.bands.reassessment);
    ReadNumber(source, "drc_bands", b, "escalated", c.bands.escalated);
  }
  if (doc.contains("zones")) {
    const json& z = doc["zones"];
    RejectUnknown(source, "zones", z, {"z1", "z2", "z3"});
    ReadNumber(source, "zones", z, "z1", c.zones.z1);
    ReadNumber(source, "zones", z, "z2", c.zones.z2);
    ReadNumber(source, "zones", z, "z3", c.zones.z3);
  }
  if (doc.contains("sweep")) {
    const json& s = doc["sweep"];
    RejectUnknown(source, "sweep", s, {"t_min", "t_max", "step"});
    ReadNumber(source, "sweep", s, "t_min", c.sweep.t_min);
    ReadNumber(source, "sweep", s, "t_max", c.sweep.t_max);
    ReadNumber(source, "sweep", s, "step", c.sweep.step);
  }
  if (doc.contains("fdi")) {
    const json& f = doc["fdi"];
    RejectUnknown(source, "fdi", f, {"mode", "default_tolerance", "tolerances"});
    if (f.contains("mode")) {
      const std::string mode = String(source, "fdi.mode", f["mode"]);
      Check(source, "fdi.mode", [&] { c.fdi_mode = fdi::ParseMode(mode); });
    }
    if (f.contains("default_tolerance")) {
      const double tau = Number(source, "fdi.default_tolerance", f["default_tolerance"]);
      for (auto& [metric, t] : c.tolerances) t = tau;
    }
    if (f.contains("tolerances")) {
      const json& t = f["tolerances"];
      RejectUnknown(source, "fdi.tolerances", t,
                    {"delta_fpr", "delta_fnr", "delta_tpr", "delta_sr"});
      for (const auto& item : t.items()) {
        c.tolerances[item.key()] =
            Number(source, "fdi.tolerances." + item.key(), item.value());
      }
    }
  }
  if (doc.contains("ges")) {
    const json& g = doc["ges"];
    RejectUnknown(source, "ges", g, {"fdi", "delta_fpr", "delta_fnr", "tsz"});
    if (g.contains("fdi")) ReadCuts(source, "ges.fdi", g["fdi"], c.ges.fdi);
    if (g.contains("delta_fpr")) ReadCuts(source, "ges.delta_fpr", g["delta_fpr"], c.ges.delta_fpr);
    if (g.contains("delta_fnr")) ReadCuts(source, "ges.delta_fnr", g["delta_fnr"], c.ges.delta_fnr);
    if (g.contains("tsz")) ReadCuts(source, "ges.tsz", g["tsz"], c.ges.tsz);
  }
  if (doc.contains("lifecycle")) {
    const json& l = doc["lifecycle"];
    RejectUnknown(source, "lifecycle", l,
                  {"recovery_gating", "blocked_recovery_via_reassessment", "hysteresis",
                   "initial_state"});
    if (l.contains("recovery_gating")) {
      c.recovery_gating = Boolean(source, "lifecycle.recovery_gating", l["recovery_gating"]);
    }
    if (l.contains("blocked_recovery_via_reassessment")) {
      c.blocked_recovery_via_reassessment =
          Boolean(source, "lifecycle.blocked_recovery_via_reassessment",
                  l["blocked_recovery_via_reassessment"]);
    }
    ReadNumber(source, "lifecycle", l, "hysteresis", c.hysteresis);
    if (l.contains("initial_state")) {
      const std::string name = String(source, "lifecycle.initial_state", l["initial_state"]);
      Check(source, "lifecycle.initial_state", [&] { c.initial_state = ParseState(name); });
    }
  }
  if (doc.contains("min_support")) {
    const json& m = doc["min_support"];
    if (!m.is_number_integer()) Invalid(source, "min_support", "expected an integer");
    c.min_support = m.get<int>();
  }
  if (doc.contains("tsz")) {
    const json& t = doc["tsz"];
    RejectUnknown(source, "tsz", t, {"s_ref", "aggregation"});
    ReadNumber(source, "tsz", t, "s_ref", c.s_ref);
    if (t.contains("aggregation")) {
      const std::string agg = String(source, "tsz.aggregation", t["aggregation"]);
      Check(source, "tsz.aggregation", [&] { c.aggregation = stability::ParseAggregation(agg); });
    }
  }

  ValidateConfigFrom(c, source);
  return c;
}

EngineConfig LoadConfig(const std::optional<std::filesystem::path>& path) {
  if (!path) return DefaultConfig();
  std::ifstream in(*path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, path->string() + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseConfigJson(ss.str(), path->string());
}

std::string CanonicalText(const EngineConfig& c) {
  std::ostringstream s;
  s << "weights=" << FormatShortest(c.weights.alpha) << "/" << FormatShortest(c.weights.beta)
    << "/" << FormatShortest(c.weights.gamma) << "/" << FormatShortest(c.weights.delta) << "\n";
  s << "drc_bands=" << FormatShortest(c.bands.deployable) << "/"
    << FormatShortest(c.bands.restricted) << "/" << FormatShortest(c.bands.reassessment)
    << "/" << FormatShortest(c.bands.escalated) << "\n";
  s << "zones=" << FormatShortest(c.zones.z1) << "/" << FormatShortest(c.zones.z2) << "/"
    << FormatShortest(c.zones.z3) << "\n";
  s << "sweep=" << FormatShortest(c.sweep.t_min) << ":" << FormatShortest(c.sweep.t_max)
    << ":" << FormatShortest(c.sweep.step) << "\n";
  s << "fdi.mode=" << fdi::ModeName(c.fdi_mode) << "\n";
  for (const auto& [metric, tau] : c.tolerances) {
    s << "fdi.tolerance." << metric << "=" << FormatShortest(tau) << "\n";
  }
  s << "ges.fdi=" << Cuts(c.ges.fdi) << "\n";
  s << "ges.delta_fpr=" << Cuts(c.ges.delta_fpr) << "\n";
  s << "ges.delta_fnr=" << Cuts(c.ges.delta_fnr) << "\n";
  s << "ges.tsz=" << Cuts(c.ges.tsz) << "\n";
  s << "lifecycle.recovery_gating=" << (c.recovery_gating ? "on" : "off") << "\n";
  s << "lifecycle.blocked_recovery_via_reassessment="
    << (c.blocked_recovery_via_reassessment ? "on" : "off") << "\n";
  s << "lifecycle.hysteresis=" << FormatShortest(c.hysteresis) << "\n";
  s << "lifecycle.initial_state=" << StateName(c.initial_state) << "\n";
  s << "min_support=" << std::to_string(c.min_support) << "\n";
  s << "tsz.s_ref=" << FormatShortest(c.s_ref) << "\n";
  s << "tsz.aggregation=" << stability::AggregationName(c.aggregation) << "\n";
  return s.str();
}

std::string Fingerprint(const EngineConfig& config) {
  return Fnv1aHex(CanonicalText(config));
}

}  // namespace assure
