#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "assure/stability.h"

// Deployment assurance score, readiness classification, escalation level and
// remediation progression.
namespace assure {

inline constexpr double kWeightSumTolerance = 1e-9;

struct AssuranceSignals {
  double fdi = 0.0;
  double delta_fpr = 0.0;
  double delta_fnr = 0.0;
  double tsz = 0.0;
  std::optional<stability::Zone> worst_zone;
  bool remediation_event = false;
  std::optional<double> r_m;  // only with remediation_event, in [-1, 1]
};

// Throws InvalidArgument naming the first field out of domain.
void ValidateSignals(const AssuranceSignals& signals);

struct WeightVector {
  double alpha = 0.25;
  double beta = 0.25;
  double gamma = 0.25;
  double delta = 0.25;
};

// NegativeWeight, or SumNotOne carrying the actual sum.
void ValidateWeights(const WeightVector& w);

// Ordered from most to least favourable; a smaller underlying value is more
// favourable.
enum class DeploymentState {
  kDeployable = 0,
  kRestricted = 1,
  kReassessmentRequired = 2,
  kEscalatedGovernance = 3,
  kBlockedDeployment = 4,
};

inline constexpr std::array<DeploymentState, 5> kAllStates = {
    DeploymentState::kDeployable, DeploymentState::kRestricted,
    DeploymentState::kReassessmentRequired, DeploymentState::kEscalatedGovernance,
    DeploymentState::kBlockedDeployment};

std::string_view StateName(DeploymentState state);
DeploymentState ParseState(std::string_view name);  // throws InvalidArgument

// 4 for Deployable down to 0 for BlockedDeployment.
inline int Favorability(DeploymentState s) { return 4 - static_cast<int>(s); }
inline bool MoreFavorable(DeploymentState a, DeploymentState b) {
  return Favorability(a) > Favorability(b);
}
DeploymentState FromFavorability(int favorability);

// Escalation levels are ordered Low < Moderate < High < Critical.
enum class EscalationLevel { kLow = 0, kModerate = 1, kHigh = 2, kCritical = 3 };

std::string_view LevelName(EscalationLevel level);

// Lower bounds of the four better-than-blocked states.
struct DrcBands {
  double deployable = 0.85;
  double restricted = 0.65;
  double reassessment = 0.50;
  double escalated = 0.30;

  // Lower DAS bound for a state; BlockedDeployment's is 0.
  double lower_bound(DeploymentState state) const;
};

// Throws ConfigInvalid unless 1 > deployable > restricted > reassessment >
// escalated > 0.
void ValidateBands(const DrcBands& bands);

// Ascending cut points c0 < c1 < c2; severity = number of cut points <= value.
using SeverityCuts = std::array<double, 3>;

struct GesThresholds {
  SeverityCuts fdi = {0.25, 0.50, 0.75};
  SeverityCuts delta_fpr = {0.15, 0.35, 0.70};
  SeverityCuts delta_fnr = {0.15, 0.35, 0.70};
  SeverityCuts tsz = {0.20, 0.40, 0.70};
};

void ValidateGesThresholds(const GesThresholds& t);

// alpha(1-FDI) + beta(1-dFPR) + gamma(1-dFNR) + delta(1-TSZ).
double ComputeDas(const AssuranceSignals& signals, const WeightVector& w = {});

// Band lookup, closed below. A GovernanceFragility zone caps the result at
// EscalatedGovernance.
DeploymentState ClassifyDrc(double das, const DrcBands& bands = {},
                            std::optional<stability::Zone> worst_zone = std::nullopt);

// Max of per-signal severities; a failed remediation (event with r_m < 0)
// raises the level one step, capped at Critical.
EscalationLevel ComputeGes(const AssuranceSignals& signals,
                           const GesThresholds& thresholds = {});

// das_next - das_prev.
double RemediationProgression(double das_prev, double das_next);

}  // namespace assure
