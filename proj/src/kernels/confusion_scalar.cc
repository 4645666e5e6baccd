#include <cstddef>

#include "assure/kernels.h"

namespace assure::kernels {

eval::ConfusionCounts CountSegmentScalar(std::span<const double> scores,
                                         std::span<const std::uint8_t> labels,
                                         double threshold) {
  eval::ConfusionCounts c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] >= threshold;
    const bool positive = labels[i] != 0;
    if (predicted) {
      positive ? ++c.tp : ++c.fp;
    } else {
      positive ? ++c.fn : ++c.tn;
    }
  }
  return c;
}

}  // namespace assure::kernels
