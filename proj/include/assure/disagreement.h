#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "assure/evaluation.h"

// Fairness Disagreement Index over a panel of normalized disparities.
namespace assure::fdi {

inline constexpr double kDefaultTolerance = 0.1;

enum class Mode { kContinuous, kVerdict };

std::string_view ModeName(Mode mode);
Mode ParseMode(std::string_view name);  // throws InvalidArgument

struct PanelEntry {
  std::string metric;
  double disparity = 0.0;  // in [0, 1]
};

struct DisparityPanel {
  std::vector<PanelEntry> entries;
  std::map<std::string, double> tolerances;  // verdict mode only
};

struct FdiValue {
  double value = 0.0;
  Mode mode = Mode::kContinuous;
};

// Checks size >= 2, disparities in [0,1], unique metric names and tolerances
// in [0,1]. Throws InsufficientPanel or InvalidArgument.
void ValidatePanel(const DisparityPanel& panel);

// Continuous: mean pairwise |d_i - d_j|. Verdict: fraction of metric pairs
// whose fair/unfair verdicts (d <= tau) differ.
FdiValue ComputeFdi(const DisparityPanel& panel, Mode mode = Mode::kContinuous);

// Panel {delta_fpr, delta_fnr, delta_tpr, delta_sr} from evaluation gaps.
DisparityPanel PanelFromGaps(const eval::DisparityGaps& gaps,
                             const std::map<std::string, double>& tolerances);

}  // namespace assure::fdi
