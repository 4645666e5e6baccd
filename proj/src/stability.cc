#include "assure/stability.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "assure/error.h"

namespace assure::stability {

std::string_view ZoneName(Zone zone) {
  switch (zone) {
    case Zone::kStable: return "Stable";
    case Zone::kSensitive: return "Sensitive";
    case Zone::kAmplifiedDisagreement: return "AmplifiedDisagreement";
    case Zone::kGovernanceFragility: return "GovernanceFragility";
  }
  return "Unknown";
}

Zone ParseZone(std::string_view name) {
  for (Zone z : {Zone::kStable, Zone::kSensitive, Zone::kAmplifiedDisagreement,
                 Zone::kGovernanceFragility}) {
    if (ZoneName(z) == name) return z;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown zone '" + std::string(name) + "'");
}

void ValidateZoneConfig(const ZoneConfig& c) {
  const bool finite = std::isfinite(c.z1) && std::isfinite(c.z2) && std::isfinite(c.z3);
  if (!finite || !(c.z1 > 0.0 && c.z1 < c.z2 && c.z2 < c.z3)) {
    throw Error(ErrorCode::kConfigInvalid,
                "zones: boundaries must satisfy 0 < z1 < z2 < z3");
  }
}

Zone ClassifyZone(double s, const ZoneConfig& zones) {
  ValidateZoneConfig(zones);
  if (!(s >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sensitivity must be >= 0");
  }
  if (s < zones.z1) return Zone::kStable;
  if (s < zones.z2) return Zone::kSensitive;
  if (s < zones.z3) return Zone::kAmplifiedDisagreement;
  return Zone::kGovernanceFragility;
}

std::vector<double> GridThresholds(const SweepRange& r) {
  if (!(r.t_min >= 0.0 && r.t_min < r.t_max && r.t_max <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "sweep range must satisfy 0 <= t_min < t_max <= 1");
  }
  if (!(r.step > 0.0) || (r.t_max - r.t_min) / r.step < 2.0 - kGridTolerance) {
    throw Error(ErrorCode::kInvalidArgument,
                "sweep step must be > 0 and fit at least twice in the range");
  }
  const auto intervals =
      static_cast<std::size_t>(std::floor((r.t_max - r.t_min) / r.step + kGridTolerance));
  std::vector<double> grid;
  grid.reserve(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    grid.push_back(std::min(r.t_min + static_cast<double>(i) * r.step, r.t_max));
  }
  return grid;
}

void ValidateProfile(const FdiProfile& p) {
  if (p.points.size() < 3) {
    throw Error(ErrorCode::kInvalidArgument, "FDI profile needs at least 3 points");
  }
  if (!(p.step > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "FDI profile step must be > 0");
  }
  for (std::size_t i = 0; i < p.points.size(); ++i) {
    const double f = p.points[i].fdi;
    if (!(f >= 0.0 && f <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "FDI profile values must be in [0,1]");
    }
    if (i == 0) continue;
    const double dt = p.points[i].threshold - p.points[i - 1].threshold;
    if (!(dt > 0.0) || std::abs(dt - p.step) > kGridTolerance) {
      throw Error(ErrorCode::kInvalidArgument,
                  "FDI profile thresholds must be increasing with uniform step");
    }
  }
}

std::vector<double> FillFlagged(const std::vector<std::optional<double>>& values) {
  const auto flagged =
      static_cast<std::size_t>(std::count(values.begin(), values.end(), std::nullopt));
  if (values.empty() || 2 * flagged > values.size()) {
    throw Error(ErrorCode::kSweepDegenerate,
                std::to_string(flagged) + " of " + std::to_string(values.size()) +
                    " sweep points lack enough eligible subgroups");
  }
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i]) {
      out[i] = *values[i];
      continue;
    }
    std::optional<std::size_t> left, right;
    for (std::size_t j = i; j-- > 0;) {
      if (values[j]) {
        left = j;
        break;
      }
    }
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (values[j]) {
        right = j;
        break;
      }
    }
    if (left && right) {
      const double w = static_cast<double>(i - *left) / static_cast<double>(*right - *left);
      out[i] = (1.0 - w) * *values[*left] + w * *values[*right];
    } else {
      out[i] = left ? *values[*left] : *values[*right];
    }
  }
  return out;
}

FdiProfile Sweep(const eval::SampleSet& samples, const SweepRange& range,
                 const PanelConfig& panel) {
  return Sweep(eval::SampleColumns::FromSamples(samples), range, panel);
}

FdiProfile Sweep(const eval::SampleColumns& columns, const SweepRange& range,
                 const PanelConfig& panel) {
  const std::vector<double> grid = GridThresholds(range);

  std::vector<std::optional<double>> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const eval::CountsByGroup counts = eval::ComputeConfusion(columns, grid[i]);
    try {
      const eval::DisparityGaps gaps = eval::ComputeGaps(
          eval::ComputeRates(counts), eval::SupportOf(counts), panel.min_support);
      values[i] =
          fdi::ComputeFdi(fdi::PanelFromGaps(gaps, panel.tolerances), panel.mode).value;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInsufficientSubgroups) throw;
    }
  }

  const std::vector<double> filled = FillFlagged(values);
  FdiProfile profile;
  profile.step = range.step;
  profile.points.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    profile.points.push_back({grid[i], filled[i], !values[i].has_value()});
  }
  return profile;
}

Zone SensitivityProfile::worst_zone() const {
  Zone worst = Zone::kStable;
  for (const SensitivityPoint& p : points) worst = std::max(worst, p.zone);
  return worst;
}

SensitivityProfile Sensitivity(const FdiProfile& profile, const ZoneConfig& zones) {
  ValidateProfile(profile);
  ValidateZoneConfig(zones);
  const auto& p = profile.points;
  const std::size_t n = p.size();
  const double h2 = 2.0 * profile.step;

  SensitivityProfile out;
  out.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Endpoint stencils in difference form so that flat runs give exactly 0.
    double d;
    if (i == 0) {
      d = (4.0 * (p[1].fdi - p[0].fdi) - (p[2].fdi - p[0].fdi)) / h2;
    } else if (i == n - 1) {
      d = (4.0 * (p[n - 1].fdi - p[n - 2].fdi) - (p[n - 1].fdi - p[n - 3].fdi)) / h2;
    } else {
      d = (p[i + 1].fdi - p[i - 1].fdi) / h2;
    }
    const double s = std::abs(d);
    out.points.push_back({p[i].threshold, s, ClassifyZone(s, zones)});
  }
  return out;
}

std::string_view AggregationName(Aggregation agg) {
  return agg == Aggregation::kMax ? "max" : "mean";
}

Aggregation ParseAggregation(std::string_view name) {
  if (name == "mean") return Aggregation::kMean;
  if (name == "max") return Aggregation::kMax;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown aggregation '" + std::string(name) + "'");
}

TszScalar ComputeTszScalar(const SensitivityProfile& sens, Aggregation aggregation,
                           double s_ref) {
  if (!(s_ref > 0.0) || !std::isfinite(s_ref)) {
    throw Error(ErrorCode::kInvalidArgument, "s_ref must be > 0");
  }
  if (sens.points.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "sensitivity profile is empty");
  }
  double agg = 0.0;
  if (aggregation == Aggregation::kMax) {
    for (const SensitivityPoint& p : sens.points) agg = std::max(agg, p.s);
  } else {
    for (const SensitivityPoint& p : sens.points) agg += p.s;
    agg /= static_cast<double>(sens.points.size());
  }
  return {std::clamp(agg / s_ref, 0.0, 1.0), aggregation, s_ref};
}

}  // namespace assure::stability
