#include "assure/assurance.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "assure/error.h"
#include "assure/fixed_format.h"

namespace assure {

namespace {

bool InUnit(double x) { return x >= 0.0 && x <= 1.0; }

void RequireUnit(double x, const char* name) {
  if (!InUnit(x)) {
    throw Error(ErrorCode::kInvalidArgument, std::string(name) + " must be in [0,1]");
  }
}

int Severity(double value, const SeverityCuts& cuts) {
  int s = 0;
  for (double c : cuts) {
    if (value >= c) ++s;
  }
  return s;
}

}  // namespace

void ValidateSignals(const AssuranceSignals& s) {
  RequireUnit(s.fdi, "fdi");
  RequireUnit(s.delta_fpr, "delta_fpr");
  RequireUnit(s.delta_fnr, "delta_fnr");
  RequireUnit(s.tsz, "tsz");
  if (s.r_m) {
    if (!s.remediation_event) {
      throw Error(ErrorCode::kInvalidArgument,
                  "r_m is only allowed on a remediation event");
    }
    if (!(*s.r_m >= -1.0 && *s.r_m <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "r_m must be in [-1,1]");
    }
  }
}

void ValidateWeights(const WeightVector& w) {
  const std::pair<const char*, double> parts[] = {
      {"alpha", w.alpha}, {"beta", w.beta}, {"gamma", w.gamma}, {"delta", w.delta}};
  for (const auto& [name, v] : parts) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::kNegativeWeight,
                  std::string("weight ") + name + " must be non-negative");
    }
  }
  const double sum = w.alpha + w.beta + w.gamma + w.delta;
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw Error(ErrorCode::kSumNotOne,
                "weights alpha+beta+gamma+delta must sum to 1 (got " +
                    FormatGeneral(sum, 12) + ")");
  }
}

std::string_view StateName(DeploymentState state) {
  switch (state) {
    case DeploymentState::kDeployable: return "Deployable";
    case DeploymentState::kRestricted: return "Restricted";
    case DeploymentState::kReassessmentRequired: return "ReassessmentRequired";
    case DeploymentState::kEscalatedGovernance: return "EscalatedGovernance";
    case DeploymentState::kBlockedDeployment: return "BlockedDeployment";
  }
  return "Unknown";
}

DeploymentState ParseState(std::string_view name) {
  for (DeploymentState s : kAllStates) {
    if (StateName(s) == name) return s;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown deployment state '" + std::string(name) + "'");
}

DeploymentState FromFavorability(int favorability) {
  return static_cast<DeploymentState>(4 - std::clamp(favorability, 0, 4));
}

std::string_view LevelName(EscalationLevel level) {
  switch (level) {
    case EscalationLevel::kLow: return "Low";
    case EscalationLevel::kModerate: return "Moderate";
    case EscalationLevel::kHigh: return "High";
    case EscalationLevel::kCritical: return "Critical";
  }
  return "Unknown";
}

double DrcBands::lower_bound(DeploymentState state) const {
  switch (state) {
    case DeploymentState::kDeployable: return deployable;
    case DeploymentState::kRestricted: return restricted;
    case DeploymentState::kReassessmentRequired: return reassessment;
    case DeploymentState::kEscalatedGovernance: return escalated;
    case DeploymentState::kBlockedDeployment: return 0.0;
  }
  return 0.0;
}

void ValidateBands(const DrcBands& b) {
  if (!(1.0 > b.deployable && b.deployable > b.restricted &&
        b.restricted > b.reassessment && b.reassessment > b.escalated &&
        b.escalated > 0.0)) {
    throw Error(ErrorCode::kConfigInvalid,
                "drc_bands: need 1 > deployable > restricted > reassessment > "
                "escalated > 0");
  }
}

void ValidateGesThresholds(const GesThresholds& t) {
  const std::pair<const char*, const SeverityCuts*> all[] = {
      {"fdi", &t.fdi}, {"delta_fpr", &t.delta_fpr},
      {"delta_fnr", &t.delta_fnr}, {"tsz", &t.tsz}};
  for (const auto& [name, cuts] : all) {
    const auto& c = *cuts;
    if (!(c[0] > 0.0 && c[0] < c[1] && c[1] < c[2] && c[2] <= 1.0)) {
      throw Error(ErrorCode::kConfigInvalid,
                  std::string("ges.") + name +
                      ": cut points must satisfy 0 < c0 < c1 < c2 <= 1");
    }
  }
}

double ComputeDas(const AssuranceSignals& s, const WeightVector& w) {
  ValidateSignals(s);
  ValidateWeights(w);
  const double das = w.alpha * (1.0 - s.fdi) + w.beta * (1.0 - s.delta_fpr) +
                     w.gamma * (1.0 - s.delta_fnr) + w.delta * (1.0 - s.tsz);
  // Weights may sum to 1 +- 1e-9.
  return std::clamp(das, 0.0, 1.0);
}

DeploymentState ClassifyDrc(double das, const DrcBands& bands,
                            std::optional<stability::Zone> worst_zone) {
  ValidateBands(bands);
  RequireUnit(das, "das");
  DeploymentState state = DeploymentState::kBlockedDeployment;
  if (das >= bands.deployable) {
    state = DeploymentState::kDeployable;
  } else if (das >= bands.restricted) {
    state = DeploymentState::kRestricted;
  } else if (das >= bands.reassessment) {
    state = DeploymentState::kReassessmentRequired;
  } else if (das >= bands.escalated) {
    state = DeploymentState::kEscalatedGovernance;
  }
  if (worst_zone == stability::Zone::kGovernanceFragility &&
      MoreFavorable(state, DeploymentState::kEscalatedGovernance)) {
    state = DeploymentState::kEscalatedGovernance;
  }
  return state;
}

EscalationLevel ComputeGes(const AssuranceSignals& s, const GesThresholds& t) {
  ValidateSignals(s);
  int level = std::max({Severity(s.fdi, t.fdi), Severity(s.delta_fpr, t.delta_fpr),
                        Severity(s.delta_fnr, t.delta_fnr), Severity(s.tsz, t.tsz)});
  if (s.remediation_event && s.r_m && *s.r_m < 0.0) level = std::min(level + 1, 3);
  return static_cast<EscalationLevel>(level);
}

double RemediationProgression(double das_prev, double das_next) {
  RequireUnit(das_prev, "das_prev");
  RequireUnit(das_next, "das_next");
  return das_next - das_prev;
}

}  // namespace assure
