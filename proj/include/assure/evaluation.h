#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace assure::eval {

inline constexpr int kDefaultMinSupport = 30;

struct Sample {
  std::string sample_id;
  double score = 0.0;  // in [0, 1]
  int label = 0;       // 0 or 1
  std::string subgroup;
};

using SampleSet = std::vector<Sample>;

struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  std::int64_t total() const { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

// Rates with a zero denominator are std::nullopt, never NaN.
struct RatePanel {
  std::optional<double> fpr;
  std::optional<double> fnr;
  std::optional<double> tpr;
  std::optional<double> selection_rate;
};

enum class GapMetric { kFpr, kFnr, kTpr, kSelectionRate };

inline constexpr GapMetric kAllGapMetrics[] = {GapMetric::kFpr, GapMetric::kFnr,
                                               GapMetric::kTpr,
                                               GapMetric::kSelectionRate};

// "delta_fpr", "delta_fnr", "delta_tpr", "delta_sr".
std::string_view GapName(GapMetric metric);
std::optional<double> RateOf(const RatePanel& panel, GapMetric metric);

struct Exclusion {
  std::string subgroup;
  std::string gap;     // gap name, or "all" for support exclusions
  std::string reason;  // "below_support" or "undefined_rate"

  friend bool operator==(const Exclusion&, const Exclusion&) = default;
};

struct DisparityGaps {
  double delta_fpr = 0.0;
  double delta_fnr = 0.0;
  double delta_tpr = 0.0;
  double delta_sr = 0.0;
  std::vector<Exclusion> excluded_subgroups;

  double get(GapMetric metric) const;
};

// Validated, subgroup-contiguous columnar copy of a SampleSet. Subgroups are
// ordered by name; each occupies one contiguous segment of the columns, which
// is what the counting kernels consume.
class SampleColumns {
 public:
  // Throws EmptyInput on an empty set, MalformedSample on a bad record.
  static SampleColumns FromSamples(const SampleSet& samples);

  std::size_t size() const { return scores_.size(); }
  std::size_t num_groups() const { return group_names_.size(); }
  const std::string& group_name(std::size_t g) const { return group_names_[g]; }
  std::span<const double> group_scores(std::size_t g) const;
  std::span<const std::uint8_t> group_labels(std::size_t g) const;
  std::int64_t group_size(std::size_t g) const {
    return static_cast<std::int64_t>(offsets_[g + 1] - offsets_[g]);
  }

 private:
  std::vector<double> scores_;
  std::vector<std::uint8_t> labels_;
  std::vector<std::size_t> offsets_;
  std::vector<std::string> group_names_;
};

using CountsByGroup = std::map<std::string, ConfusionCounts>;
using RatesByGroup = std::map<std::string, RatePanel>;
using SupportByGroup = std::map<std::string, std::int64_t>;

// Predicts positive iff score >= threshold.
CountsByGroup ComputeConfusion(const SampleSet& samples, double threshold);
CountsByGroup ComputeConfusion(const SampleColumns& columns, double threshold);

RatePanel ComputeRates(const ConfusionCounts& counts);
RatesByGroup ComputeRates(const CountsByGroup& counts);
SupportByGroup SupportOf(const CountsByGroup& counts);

// max - min of one rate over subgroups with support >= min_support and the
// rate defined. Exclusions are appended to `exclusions` when non-null.
// Throws InsufficientSubgroups when fewer than two subgroups qualify.
double ComputeGap(GapMetric metric, const RatesByGroup& rates,
                  const SupportByGroup& support, int min_support,
                  std::vector<Exclusion>* exclusions = nullptr);

// All four gaps; throws InsufficientSubgroups naming the first gap that
// cannot be formed.
DisparityGaps ComputeGaps(const RatesByGroup& rates,
                          const SupportByGroup& support,
                          int min_support = kDefaultMinSupport);

// Per-subgroup average of a rate over eligible subgroups (macro mean).
std::optional<double> MacroMean(GapMetric metric, const RatesByGroup& rates,
                                const SupportByGroup& support, int min_support);

}  // namespace assure::eval
