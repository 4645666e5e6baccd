#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "assure/assurance.h"

// Governance-state machine over ordered snapshot assessments.
namespace assure::lifecycle {

inline constexpr double kDefaultHysteresis = 0.02;

struct SignalsRecord {
  std::string snapshot_id;
  AssuranceSignals signals;
};

struct AssessmentConfig {
  WeightVector weights;
  DrcBands bands;
  GesThresholds ges;
};

struct SnapshotAssessment {
  std::string snapshot_id;
  AssuranceSignals signals;
  double das = 0.0;
  DeploymentState stateless_drc = DeploymentState::kBlockedDeployment;
  EscalationLevel ges = EscalationLevel::kLow;
  std::optional<double> r_p;
};

// Scores one snapshot. `das_override` replaces the computed DAS (used to
// replay externally reported scores); classification always uses the final
// DAS.
SnapshotAssessment Assess(const SignalsRecord& record, const AssessmentConfig& config,
                          std::optional<double> das_override = std::nullopt);

// Scores an ordered sequence. A remediation snapshot without an explicit r_m
// takes its progression against the previous snapshot as r_m, so a failed
// remediation feeds escalation.
std::vector<SnapshotAssessment> AssessSequence(const std::vector<SignalsRecord>& records,
                                               const AssessmentConfig& config);

struct RulesConfig {
  DrcBands bands;
  bool recovery_gating = true;
  // First recovery out of BlockedDeployment lands on ReassessmentRequired at
  // most, regardless of recovery_gating.
  bool blocked_recovery_via_reassessment = true;
  double hysteresis = kDefaultHysteresis;
};

void ValidateRules(const RulesConfig& rules);
std::string CanonicalText(const RulesConfig& rules);

struct TransitionRecord {
  DeploymentState from_state = DeploymentState::kReassessmentRequired;
  DeploymentState to_state = DeploymentState::kReassessmentRequired;
  std::vector<std::string> trigger_reasons;
  std::optional<double> r_p;

  bool changed() const { return from_state != to_state; }
};

// Degradation is adopted immediately. Recovery needs a remediation event and a
// DAS at least `hysteresis` above the destination's lower band bound; with
// gating it advances one level per step.
std::pair<DeploymentState, TransitionRecord> Step(DeploymentState current,
                                                  const SnapshotAssessment& assessment,
                                                  const RulesConfig& rules);

struct TraceEntry {
  SnapshotAssessment assessment;
  DeploymentState governed_state = DeploymentState::kReassessmentRequired;
  std::optional<TransitionRecord> transition;  // none for the first snapshot
};

struct GovernanceTrace {
  std::vector<TraceEntry> entries;
  std::string config_fingerprint;
};

// Folds Step over the sequence and fills r_p between consecutive snapshots.
// The first snapshot is classified from `initial` but records no transition.
// Throws EmptySequence.
GovernanceTrace Replay(std::vector<SnapshotAssessment> assessments,
                       DeploymentState initial, const RulesConfig& rules);

enum class Format { kCsv, kJson };

Format ParseFormat(std::string_view name);  // throws InvalidArgument

inline constexpr std::string_view kTraceCsvHeader =
    "snapshot_id,fdi,delta_fpr,delta_fnr,tsz,das,ges,stateless_drc,governed_state,"
    "transition,r_p";

std::string EmitTrace(const GovernanceTrace& trace, Format format);

// "From->To[reason;reason]" for a changed record, otherwise empty.
std::string TransitionLabel(const TransitionRecord& record);

}  // namespace assure::lifecycle
