#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "assure/evaluation.h"

// Confusion counting over one subgroup segment. The scalar kernel is the
// reference; vector variants must agree with it exactly.
namespace assure::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view IsaName(Isa isa);

// True when the ISA was compiled in and the running CPU supports it.
bool IsaAvailable(Isa isa);

// Best available ISA. ASSURE_FORCE_SCALAR=1 in the environment pins scalar.
Isa ActiveIsa();

eval::ConfusionCounts CountSegmentScalar(std::span<const double> scores,
                                         std::span<const std::uint8_t> labels,
                                         double threshold);

#if defined(ASSURE_HAVE_AVX2)
eval::ConfusionCounts CountSegmentAvx2(std::span<const double> scores,
                                       std::span<const std::uint8_t> labels,
                                       double threshold);
#endif

// Runs the requested ISA; falls back to scalar when it is unavailable.
eval::ConfusionCounts CountSegment(std::span<const double> scores,
                                   std::span<const std::uint8_t> labels,
                                   double threshold, Isa isa);

inline eval::ConfusionCounts CountSegment(std::span<const double> scores,
                                          std::span<const std::uint8_t> labels,
                                          double threshold) {
  return CountSegment(scores, labels, threshold, ActiveIsa());
}

}  // namespace assure::kernels
