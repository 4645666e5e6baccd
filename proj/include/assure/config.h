#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "assure/assurance.h"
#include "assure/disagreement.h"
#include "assure/lifecycle.h"
#include "assure/stability.h"

namespace assure {

// Every tunable of the engine. Defaults are the documented engine defaults;
// a config file overrides any subset of them.
struct EngineConfig {
  WeightVector weights;
  DrcBands bands;
  stability::ZoneConfig zones;
  stability::SweepRange sweep;
  fdi::Mode fdi_mode = fdi::Mode::kContinuous;
  std::map<std::string, double> tolerances;  // one entry per panel metric
  GesThresholds ges;
  bool recovery_gating = true;
  bool blocked_recovery_via_reassessment = true;
  double hysteresis = lifecycle::kDefaultHysteresis;
  DeploymentState initial_state = DeploymentState::kReassessmentRequired;
  int min_support = eval::kDefaultMinSupport;
  double s_ref = stability::kDefaultSRef;
  stability::Aggregation aggregation = stability::Aggregation::kMean;

  lifecycle::AssessmentConfig assessment() const { return {weights, bands, ges}; }
  lifecycle::RulesConfig rules() const {
    return {bands, recovery_gating, blocked_recovery_via_reassessment, hysteresis};
  }
  stability::PanelConfig panel() const { return {fdi_mode, tolerances, min_support}; }
};

EngineConfig DefaultConfig();

// Re-validates every module constraint; throws ConfigInvalid naming the field.
void ValidateConfig(const EngineConfig& config);

// Parses a JSON config document layered over the defaults. Unknown keys are
// rejected. `source` prefixes error messages.
EngineConfig ParseConfigJson(std::string_view text, std::string_view source = "config");

// Defaults when `path` is empty; IoError when the file cannot be read.
EngineConfig LoadConfig(const std::optional<std::filesystem::path>& path);

// Canonical key=value text of the full config and its FNV-1a fingerprint.
std::string CanonicalText(const EngineConfig& config);
std::string Fingerprint(const EngineConfig& config);

}  // namespace assure
