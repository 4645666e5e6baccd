#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "assure/disagreement.h"
#include "assure/evaluation.h"

// Threshold sweeps, FDI sensitivity |dFDI/dt|, stability zones and the [0,1]
// TSZ scalar consumed by the assurance score.
namespace assure::stability {

// Point uniformity tolerance for profile grids.
inline constexpr double kGridTolerance = 1e-9;

enum class Zone { kStable, kSensitive, kAmplifiedDisagreement, kGovernanceFragility };

std::string_view ZoneName(Zone zone);
Zone ParseZone(std::string_view name);  // throws InvalidArgument

struct ZoneConfig {
  double z1 = 0.25;
  double z2 = 0.75;
  double z3 = 1.5;
};

// Throws ConfigInvalid unless 0 < z1 < z2 < z3 (all finite).
void ValidateZoneConfig(const ZoneConfig& config);

struct SweepRange {
  double t_min = 0.20;
  double t_max = 0.90;
  double step = 0.05;
};

// Grid thresholds t_min + i*step up to t_max (inclusive within tolerance).
std::vector<double> GridThresholds(const SweepRange& range);

struct PanelConfig {
  fdi::Mode mode = fdi::Mode::kContinuous;
  std::map<std::string, double> tolerances;  // missing metrics use 0.1
  int min_support = eval::kDefaultMinSupport;
};

struct ProfilePoint {
  double threshold = 0.0;
  double fdi = 0.0;
  bool interpolated = false;  // gaps could not be formed at this threshold
};

struct FdiProfile {
  std::vector<ProfilePoint> points;
  double step = 0.0;
};

// Throws InvalidArgument unless >= 3 points, strictly increasing and
// uniformly spaced by `step` within kGridTolerance, fdi in [0,1].
void ValidateProfile(const FdiProfile& profile);

// Fills missing values by linear interpolation between the nearest present
// neighbours, holding the nearest value past either end. Throws
// SweepDegenerate when more than half the values are missing.
std::vector<double> FillFlagged(const std::vector<std::optional<double>>& values);

// Evaluates FDI at every grid threshold. Points whose gaps cannot be formed
// are linearly interpolated from the nearest valid neighbours (held constant
// past the ends). More than half the points flagged -> SweepDegenerate.
FdiProfile Sweep(const eval::SampleColumns& columns, const SweepRange& range,
                 const PanelConfig& panel = {});
FdiProfile Sweep(const eval::SampleSet& samples, const SweepRange& range,
                 const PanelConfig& panel = {});

struct SensitivityPoint {
  double threshold = 0.0;
  double s = 0.0;
  Zone zone = Zone::kStable;
};

struct SensitivityProfile {
  std::vector<SensitivityPoint> points;

  Zone worst_zone() const;
};

// Central differences inside, second-order one-sided differences at the two
// ends; all three stencils are exact for quadratics.
SensitivityProfile Sensitivity(const FdiProfile& profile,
                               const ZoneConfig& zones = {});

Zone ClassifyZone(double s, const ZoneConfig& zones = {});

enum class Aggregation { kMean, kMax };

std::string_view AggregationName(Aggregation agg);
Aggregation ParseAggregation(std::string_view name);

inline constexpr double kDefaultSRef = 2.0;

struct TszScalar {
  double value = 0.0;
  Aggregation aggregation = Aggregation::kMean;
  double s_ref = kDefaultSRef;
};

TszScalar ComputeTszScalar(const SensitivityProfile& sens,
                           Aggregation aggregation = Aggregation::kMean,
                           double s_ref = kDefaultSRef);

}  // namespace assure::stability
