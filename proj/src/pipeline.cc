#include "assure/pipeline.h"

#include <algorithm>

namespace assure {

PredictionReport AssessPredictions(const eval::SampleColumns& columns, double threshold,
                                   const EngineConfig& config) {
  PredictionReport r;
  r.threshold = threshold;
  r.counts = eval::ComputeConfusion(columns, threshold);
  r.rates = eval::ComputeRates(r.counts);
  r.gaps = eval::ComputeGaps(r.rates, eval::SupportOf(r.counts), config.min_support);
  r.fdi = fdi::ComputeFdi(fdi::PanelFromGaps(r.gaps, config.tolerances), config.fdi_mode);

  r.profile = stability::Sweep(columns, config.sweep, config.panel());
  r.sensitivity = stability::Sensitivity(r.profile, config.zones);
  r.tsz = stability::ComputeTszScalar(r.sensitivity, config.aggregation, config.s_ref);

  r.signals.fdi = r.fdi.value;
  r.signals.delta_fpr = std::clamp(r.gaps.delta_fpr, 0.0, 1.0);
  r.signals.delta_fnr = std::clamp(r.gaps.delta_fnr, 0.0, 1.0);
  r.signals.tsz = r.tsz.value;
  r.signals.worst_zone = r.sensitivity.worst_zone();
  return r;
}

}  // namespace assure
