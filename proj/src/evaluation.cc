#include "assure/evaluation.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "assure/error.h"
#include "assure/kernels.h"

namespace assure::eval {

namespace {

void ValidateSample(const Sample& s) {
  if (!(s.score >= 0.0 && s.score <= 1.0)) {
    throw Error(ErrorCode::kMalformedSample,
                "sample '" + s.sample_id + "': score must be in [0,1]");
  }
  if (s.label != 0 && s.label != 1) {
    throw Error(ErrorCode::kMalformedSample,
                "sample '" + s.sample_id + "': label must be 0 or 1");
  }
  if (s.subgroup.empty()) {
    throw Error(ErrorCode::kMalformedSample,
                "sample '" + s.sample_id + "': subgroup is empty");
  }
}

void ValidateThreshold(double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must be in [0,1]");
  }
}

std::optional<double> Ratio(std::int64_t num, std::int64_t den) {
  if (den <= 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::string_view GapName(GapMetric metric) {
  switch (metric) {
    case GapMetric::kFpr: return "delta_fpr";
    case GapMetric::kFnr: return "delta_fnr";
    case GapMetric::kTpr: return "delta_tpr";
    case GapMetric::kSelectionRate: return "delta_sr";
  }
  return "unknown";
}

std::optional<double> RateOf(const RatePanel& panel, GapMetric metric) {
  switch (metric) {
    case GapMetric::kFpr: return panel.fpr;
    case GapMetric::kFnr: return panel.fnr;
    case GapMetric::kTpr: return panel.tpr;
    case GapMetric::kSelectionRate: return panel.selection_rate;
  }
  return std::nullopt;
}

double DisparityGaps::get(GapMetric metric) const {
  switch (metric) {
    case GapMetric::kFpr: return delta_fpr;
    case GapMetric::kFnr: return delta_fnr;
    case GapMetric::kTpr: return delta_tpr;
    case GapMetric::kSelectionRate: return delta_sr;
  }
  return 0.0;
}

SampleColumns SampleColumns::FromSamples(const SampleSet& samples) {
  if (samples.empty()) {
    throw Error(ErrorCode::kEmptyInput, "sample set is empty");
  }
  for (const Sample& s : samples) ValidateSample(s);

  // Stable sort keeps input order within a subgroup.
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return samples[a].subgroup < samples[b].subgroup;
  });

  SampleColumns cols;
  cols.scores_.reserve(samples.size());
  cols.labels_.reserve(samples.size());
  for (std::size_t idx : order) {
    const Sample& s = samples[idx];
    if (cols.group_names_.empty() || cols.group_names_.back() != s.subgroup) {
      cols.group_names_.push_back(s.subgroup);
      cols.offsets_.push_back(cols.scores_.size());
    }
    cols.scores_.push_back(s.score);
    cols.labels_.push_back(static_cast<std::uint8_t>(s.label));
  }
  cols.offsets_.push_back(cols.scores_.size());
  return cols;
}

std::span<const double> SampleColumns::group_scores(std::size_t g) const {
  return std::span<const double>(scores_).subspan(offsets_[g],
                                                  offsets_[g + 1] - offsets_[g]);
}

std::span<const std::uint8_t> SampleColumns::group_labels(std::size_t g) const {
  return std::span<const std::uint8_t>(labels_).subspan(
      offsets_[g], offsets_[g + 1] - offsets_[g]);
}

CountsByGroup ComputeConfusion(const SampleSet& samples, double threshold) {
  ValidateThreshold(threshold);
  return ComputeConfusion(SampleColumns::FromSamples(samples), threshold);
}

CountsByGroup ComputeConfusion(const SampleColumns& columns, double threshold) {
  ValidateThreshold(threshold);
  CountsByGroup out;
  for (std::size_t g = 0; g < columns.num_groups(); ++g) {
    out.emplace(columns.group_name(g),
                kernels::CountSegment(columns.group_scores(g),
                                      columns.group_labels(g), threshold));
  }
  return out;
}

RatePanel ComputeRates(const ConfusionCounts& c) {
  RatePanel p;
  p.fpr = Ratio(c.fp, c.fp + c.tn);
  p.fnr = Ratio(c.fn, c.fn + c.tp);
  p.tpr = Ratio(c.tp, c.tp + c.fn);
  p.selection_rate = Ratio(c.tp + c.fp, c.total());
  return p;
}

RatesByGroup ComputeRates(const CountsByGroup& counts) {
  RatesByGroup out;
  for (const auto& [group, c] : counts) out.emplace(group, ComputeRates(c));
  return out;
}

SupportByGroup SupportOf(const CountsByGroup& counts) {
  SupportByGroup out;
  for (const auto& [group, c] : counts) out.emplace(group, c.total());
  return out;
}

double ComputeGap(GapMetric metric, const RatesByGroup& rates,
                  const SupportByGroup& support, int min_support,
                  std::vector<Exclusion>* exclusions) {
  const std::string gap(GapName(metric));
  double lo = 0.0;
  double hi = 0.0;
  int eligible = 0;
  std::vector<Exclusion> local;
  for (const auto& [group, panel] : rates) {
    const auto it = support.find(group);
    const std::int64_t n = it == support.end() ? 0 : it->second;
    if (n < min_support) {
      local.push_back({group, gap, "below_support"});
      continue;
    }
    const std::optional<double> r = RateOf(panel, metric);
    if (!r) {
      local.push_back({group, gap, "undefined_rate"});
      continue;
    }
    if (eligible == 0) {
      lo = hi = *r;
    } else {
      lo = std::min(lo, *r);
      hi = std::max(hi, *r);
    }
    ++eligible;
  }
  if (exclusions != nullptr) {
    exclusions->insert(exclusions->end(), local.begin(), local.end());
  }
  if (eligible < 2) {
    std::string msg = gap + ": fewer than two eligible subgroups";
    for (const Exclusion& e : local) {
      msg += "; " + e.subgroup + " excluded (" + e.reason + ")";
    }
    throw Error(ErrorCode::kInsufficientSubgroups, msg);
  }
  return hi - lo;
}

DisparityGaps ComputeGaps(const RatesByGroup& rates,
                          const SupportByGroup& support, int min_support) {
  DisparityGaps gaps;
  std::vector<Exclusion> all;
  gaps.delta_fpr = ComputeGap(GapMetric::kFpr, rates, support, min_support, &all);
  gaps.delta_fnr = ComputeGap(GapMetric::kFnr, rates, support, min_support, &all);
  gaps.delta_tpr = ComputeGap(GapMetric::kTpr, rates, support, min_support, &all);
  gaps.delta_sr =
      ComputeGap(GapMetric::kSelectionRate, rates, support, min_support, &all);

  // A below-support subgroup is dropped from every gap; report it once.
  for (const Exclusion& e : all) {
    if (e.reason == "below_support") {
      const bool seen = std::any_of(
          gaps.excluded_subgroups.begin(), gaps.excluded_subgroups.end(),
          [&](const Exclusion& x) { return x.subgroup == e.subgroup && x.gap == "all"; });
      if (!seen) gaps.excluded_subgroups.push_back({e.subgroup, "all", e.reason});
    } else {
      gaps.excluded_subgroups.push_back(e);
    }
  }
  return gaps;
}

std::optional<double> MacroMean(GapMetric metric, const RatesByGroup& rates,
                                const SupportByGroup& support, int min_support) {
  double sum = 0.0;
  int n = 0;
  for (const auto& [group, panel] : rates) {
    const auto it = support.find(group);
    if (it == support.end() || it->second < min_support) continue;
    if (const auto r = RateOf(panel, metric)) {
      sum += *r;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

}  // namespace assure::eval
