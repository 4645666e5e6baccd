// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <cstddef>
#include <cstdint>
#include <cstring>

#include "assure/kernels.h"

namespace assure::kernels {

namespace {

inline std::int64_t HorizontalSum(__m256i v) {
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

}  // namespace

eval::ConfusionCounts CountSegmentAvx2(std::span<const double> scores,
                                       std::span<const std::uint8_t> labels,
                                       double threshold) {
  const std::size_t n = scores.size();
  const __m256d t = _mm256_set1_pd(threshold);
  const __m256i zero = _mm256_setzero_si256();

  // Lane masks are all-ones (-1), so subtracting them counts hits per lane.
  __m256i tp = zero;
  __m256i fp = zero;
  __m256i fn = zero;

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = _mm256_loadu_pd(scores.data() + i);
    const __m256i pred = _mm256_castpd_si256(_mm256_cmp_pd(s, t, _CMP_GE_OQ));

    std::int32_t packed;
    std::memcpy(&packed, labels.data() + i, sizeof(packed));
    const __m256i lab = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
    const __m256i pos = _mm256_xor_si256(_mm256_cmpeq_epi64(lab, zero),
                                         _mm256_set1_epi64x(-1));

    tp = _mm256_sub_epi64(tp, _mm256_and_si256(pred, pos));
    fp = _mm256_sub_epi64(fp, _mm256_andnot_si256(pos, pred));
    fn = _mm256_sub_epi64(fn, _mm256_andnot_si256(pred, pos));
  }

  eval::ConfusionCounts c;
  c.tp = HorizontalSum(tp);
  c.fp = HorizontalSum(fp);
  c.fn = HorizontalSum(fn);
  c.tn = static_cast<std::int64_t>(i) - c.tp - c.fp - c.fn;

  const eval::ConfusionCounts tail = CountSegmentScalar(
      scores.subspan(i), labels.subspan(i), threshold);
  c.tp += tail.tp;
  c.fp += tail.fp;
  c.fn += tail.fn;
  c.tn += tail.tn;
  return c;
}

}  // namespace assure::kernels
