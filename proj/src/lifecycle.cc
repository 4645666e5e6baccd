#include "assure/lifecycle.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "assure/csv.h"
#include "assure/error.h"
#include "assure/fixed_format.h"

namespace assure::lifecycle {

namespace {

// Slack on the hysteresis comparison so that a DAS landing exactly on
// bound + margin is not rejected by binary rounding of the sum.
constexpr double kHysteresisSlack = 1e-9;

void AddReason(std::vector<std::string>& reasons, const char* reason) {
  if (std::find(reasons.begin(), reasons.end(), reason) == reasons.end()) {
    reasons.emplace_back(reason);
  }
}

bool FailedRemediation(const AssuranceSignals& s) {
  return s.remediation_event && s.r_m && *s.r_m < 0.0;
}

}  // namespace

SnapshotAssessment Assess(const SignalsRecord& record, const AssessmentConfig& config,
                          std::optional<double> das_override) {
  SnapshotAssessment a;
  a.snapshot_id = record.snapshot_id;
  a.signals = record.signals;
  a.das = das_override ? *das_override : ComputeDas(record.signals, config.weights);
  if (das_override) ValidateSignals(record.signals);
  a.stateless_drc = ClassifyDrc(a.das, config.bands, record.signals.worst_zone);
  a.ges = ComputeGes(record.signals, config.ges);
  return a;
}

std::vector<SnapshotAssessment> AssessSequence(const std::vector<SignalsRecord>& records,
                                               const AssessmentConfig& config) {
  std::vector<SnapshotAssessment> out;
  out.reserve(records.size());
  for (const SignalsRecord& rec : records) {
    SignalsRecord r = rec;
    if (r.signals.remediation_event && !r.signals.r_m && !out.empty()) {
      const double das = ComputeDas(r.signals, config.weights);
      r.signals.r_m = RemediationProgression(out.back().das, das);
    }
    SnapshotAssessment a = Assess(r, config);
    if (!out.empty()) a.r_p = RemediationProgression(out.back().das, a.das);
    out.push_back(std::move(a));
  }
  return out;
}

void ValidateRules(const RulesConfig& rules) {
  ValidateBands(rules.bands);
  if (!(rules.hysteresis >= 0.0 && rules.hysteresis < 1.0)) {
    throw Error(ErrorCode::kConfigInvalid, "lifecycle.hysteresis must be in [0,1)");
  }
}

std::string CanonicalText(const RulesConfig& r) {
  std::string s;
  s += "bands=" + FormatShortest(r.bands.deployable) + "/" +
       FormatShortest(r.bands.restricted) + "/" + FormatShortest(r.bands.reassessment) +
       "/" + FormatShortest(r.bands.escalated) + "\n";
  s += std::string("recovery_gating=") + (r.recovery_gating ? "on" : "off") + "\n";
  s += std::string("blocked_recovery_via_reassessment=") +
       (r.blocked_recovery_via_reassessment ? "on" : "off") + "\n";
  s += "hysteresis=" + FormatShortest(r.hysteresis) + "\n";
  return s;
}

std::pair<DeploymentState, TransitionRecord> Step(DeploymentState current,
                                                  const SnapshotAssessment& a,
                                                  const RulesConfig& rules) {
  TransitionRecord rec;
  rec.from_state = current;
  rec.to_state = current;
  rec.r_p = a.r_p;

  const DeploymentState target = a.stateless_drc;
  const DeploymentState band_only = ClassifyDrc(a.das, rules.bands);
  const bool failed = FailedRemediation(a.signals);

  if (target == current) return {current, rec};

  if (MoreFavorable(current, target)) {
    rec.to_state = target;
    if (band_only != target) AddReason(rec.trigger_reasons, "fragility_override");
    if (MoreFavorable(current, band_only)) AddReason(rec.trigger_reasons, "das_band_change");
    if (failed) AddReason(rec.trigger_reasons, "failed_remediation");
    return {target, rec};
  }

  // Recovery.
  if (!a.signals.remediation_event) {
    AddReason(rec.trigger_reasons, "recovery_requires_remediation");
    return {current, rec};
  }
  int ceiling = Favorability(target);
  if (rules.recovery_gating) ceiling = std::min(ceiling, Favorability(current) + 1);
  if (rules.blocked_recovery_via_reassessment &&
      current == DeploymentState::kBlockedDeployment) {
    ceiling = std::min(ceiling, Favorability(DeploymentState::kReassessmentRequired));
  }
  for (int f = ceiling; f > Favorability(current); --f) {
    const DeploymentState dest = FromFavorability(f);
    if (a.das + kHysteresisSlack >= rules.bands.lower_bound(dest) + rules.hysteresis) {
      rec.to_state = dest;
      AddReason(rec.trigger_reasons, "das_band_change");
      if (ceiling != Favorability(target)) AddReason(rec.trigger_reasons, "recovery_gated");
      if (f != ceiling) AddReason(rec.trigger_reasons, "hysteresis_limited");
      return {dest, rec};
    }
  }
  AddReason(rec.trigger_reasons, "hysteresis_hold");
  return {current, rec};
}

GovernanceTrace Replay(std::vector<SnapshotAssessment> assessments,
                       DeploymentState initial, const RulesConfig& rules) {
  if (assessments.empty()) {
    throw Error(ErrorCode::kEmptySequence, "lifecycle replay needs at least one snapshot");
  }
  ValidateRules(rules);

  GovernanceTrace trace;
  trace.config_fingerprint = Fnv1aHex(CanonicalText(rules));
  trace.entries.reserve(assessments.size());

  DeploymentState state = initial;
  for (std::size_t i = 0; i < assessments.size(); ++i) {
    SnapshotAssessment& a = assessments[i];
    a.r_p = i == 0 ? std::nullopt
                   : std::optional<double>(
                         RemediationProgression(assessments[i - 1].das, a.das));
    auto [next, rec] = Step(state, a, rules);
    TraceEntry entry{a, next, std::nullopt};
    if (i > 0) entry.transition = std::move(rec);
    trace.entries.push_back(std::move(entry));
    state = next;
  }
  return trace;
}

Format ParseFormat(std::string_view name) {
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  throw Error(ErrorCode::kInvalidArgument, "unknown format '" + std::string(name) + "'");
}

std::string TransitionLabel(const TransitionRecord& rec) {
  if (!rec.changed()) return "";
  std::string s = std::string(StateName(rec.from_state)) + "->" +
                  std::string(StateName(rec.to_state)) + "[";
  for (std::size_t i = 0; i < rec.trigger_reasons.size(); ++i) {
    if (i) s += ';';
    s += rec.trigger_reasons[i];
  }
  return s + "]";
}

namespace {

std::string EmitCsv(const GovernanceTrace& trace) {
  std::string out(kTraceCsvHeader);
  out += '\n';
  for (const TraceEntry& e : trace.entries) {
    const SnapshotAssessment& a = e.assessment;
    out += csv::Escape(a.snapshot_id);
    for (double v : {a.signals.fdi, a.signals.delta_fpr, a.signals.delta_fnr,
                     a.signals.tsz, a.das}) {
      out += ',' + FormatFixed4(v);
    }
    out += ',';
    out += LevelName(a.ges);
    out += ',';
    out += StateName(a.stateless_drc);
    out += ',';
    out += StateName(e.governed_state);
    out += ',' + (e.transition ? TransitionLabel(*e.transition) : std::string());
    out += ',' + (a.r_p ? FormatFixed4(*a.r_p) : std::string());
    out += '\n';
  }
  return out;
}

std::string EmitJson(const GovernanceTrace& trace) {
  using nlohmann::ordered_json;
  ordered_json rows = ordered_json::array();
  for (const TraceEntry& e : trace.entries) {
    const SnapshotAssessment& a = e.assessment;
    ordered_json row;
    row["snapshot_id"] = a.snapshot_id;
    row["fdi"] = Round4(a.signals.fdi);
    row["delta_fpr"] = Round4(a.signals.delta_fpr);
    row["delta_fnr"] = Round4(a.signals.delta_fnr);
    row["tsz"] = Round4(a.signals.tsz);
    row["das"] = Round4(a.das);
    row["ges"] = LevelName(a.ges);
    row["stateless_drc"] = StateName(a.stateless_drc);
    row["governed_state"] = StateName(e.governed_state);
    if (e.transition) {
      ordered_json t;
      t["from"] = StateName(e.transition->from_state);
      t["to"] = StateName(e.transition->to_state);
      t["reasons"] = e.transition->trigger_reasons;
      row["transition"] = std::move(t);
    } else {
      row["transition"] = nullptr;
    }
    row["r_p"] = a.r_p ? ordered_json(Round4(*a.r_p)) : ordered_json(nullptr);
    rows.push_back(std::move(row));
  }
  ordered_json doc;
  doc["config_fingerprint"] = trace.config_fingerprint;
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

}  // namespace

std::string EmitTrace(const GovernanceTrace& trace, Format format) {
  return format == Format::kJson ? EmitJson(trace) : EmitCsv(trace);
}

}  // namespace assure::lifecycle
