#include "assure/disagreement.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "assure/error.h"

namespace assure::fdi {

std::string_view ModeName(Mode mode) {
  return mode == Mode::kVerdict ? "verdict" : "continuous";
}

Mode ParseMode(std::string_view name) {
  if (name == "continuous") return Mode::kContinuous;
  if (name == "verdict") return Mode::kVerdict;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown FDI mode '" + std::string(name) + "'");
}

void ValidatePanel(const DisparityPanel& panel) {
  if (panel.entries.size() < 2) {
    throw Error(ErrorCode::kInsufficientPanel,
                "disparity panel needs at least 2 entries");
  }
  std::set<std::string> names;
  for (const PanelEntry& e : panel.entries) {
    if (!(e.disparity >= 0.0 && e.disparity <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "disparity for '" + e.metric + "' must be in [0,1]");
    }
    if (!names.insert(e.metric).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate metric '" + e.metric + "' in panel");
    }
  }
  for (const auto& [metric, tau] : panel.tolerances) {
    if (!(tau >= 0.0 && tau <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "tolerance for '" + metric + "' must be in [0,1]");
    }
  }
}

FdiValue ComputeFdi(const DisparityPanel& panel, Mode mode) {
  ValidatePanel(panel);
  const auto& e = panel.entries;
  const std::size_t k = e.size();
  const double pairs = static_cast<double>(k * (k - 1) / 2);

  if (mode == Mode::kContinuous) {
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        sum += std::abs(e[i].disparity - e[j].disparity);
      }
    }
    return {sum / pairs, mode};
  }

  std::vector<bool> fair(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto it = panel.tolerances.find(e[i].metric);
    if (it == panel.tolerances.end()) {
      throw Error(ErrorCode::kMissingTolerance,
                  "no verdict tolerance for metric '" + e[i].metric + "'");
    }
    fair[i] = e[i].disparity <= it->second;
  }
  std::size_t disagree = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (fair[i] != fair[j]) ++disagree;
    }
  }
  return {static_cast<double>(disagree) / pairs, mode};
}

DisparityPanel PanelFromGaps(const eval::DisparityGaps& gaps,
                             const std::map<std::string, double>& tolerances) {
  DisparityPanel panel;
  for (eval::GapMetric m : eval::kAllGapMetrics) {
    const std::string name(eval::GapName(m));
    // Gaps of rates in [0,1] stay in [0,1]; clamp guards float noise.
    panel.entries.push_back({name, std::clamp(gaps.get(m), 0.0, 1.0)});
    const auto it = tolerances.find(name);
    panel.tolerances[name] = it == tolerances.end() ? kDefaultTolerance : it->second;
  }
  return panel;
}

}  // namespace assure::fdi
