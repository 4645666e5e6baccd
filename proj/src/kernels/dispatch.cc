#include <cstdlib>
#include <cstring>

#include "assure/kernels.h"

namespace assure::kernels {

std::string_view IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool IsaAvailable(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(ASSURE_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa ActiveIsa() {
  static const Isa active = [] {
    const char* force = std::getenv("ASSURE_FORCE_SCALAR");
    if (force != nullptr && std::strcmp(force, "1") == 0) return Isa::kScalar;
    return IsaAvailable(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
  }();
  return active;
}

eval::ConfusionCounts CountSegment(std::span<const double> scores,
                                   std::span<const std::uint8_t> labels,
                                   double threshold, Isa isa) {
#if defined(ASSURE_HAVE_AVX2)
  if (isa == Isa::kAvx2 && IsaAvailable(Isa::kAvx2)) {
    return CountSegmentAvx2(scores, labels, threshold);
  }
#endif
  (void)isa;
  return CountSegmentScalar(scores, labels, threshold);
}

}  // namespace assure::kernels
