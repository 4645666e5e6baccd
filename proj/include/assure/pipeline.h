#pragma once

#include "assure/config.h"
#include "assure/evaluation.h"

namespace assure {

// Everything derived from raw predictions at one operating threshold.
struct PredictionReport {
  double threshold = 0.0;
  eval::CountsByGroup counts;
  eval::RatesByGroup rates;
  eval::DisparityGaps gaps;
  fdi::FdiValue fdi;
  stability::FdiProfile profile;
  stability::SensitivityProfile sensitivity;
  stability::TszScalar tsz;
  AssuranceSignals signals;
};

// Gaps and FDI at `threshold`, TSZ from a sweep over config.sweep, assembled
// into assurance signals (worst zone included).
PredictionReport AssessPredictions(const eval::SampleColumns& columns, double threshold,
                                   const EngineConfig& config);

}  // namespace assure
