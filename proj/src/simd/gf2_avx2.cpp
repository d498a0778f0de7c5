// Compiled with -mavx2; callers must check cpu_supports_avx2() before
// invoking these through the dispatch table.
#include "wrp/simd/gf2.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace wrp::simd {

namespace {

void xor_rows_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a, b));
  }
  for (; i < words; ++i) dst[i] ^= src[i];
}

bool is_zero_avx2(const std::uint64_t* row, std::size_t words) {
  std::size_t i = 0;
  __m256i acc = _mm256_setzero_si256();
  for (; i + 4 <= words; i += 4) {
    acc = _mm256_or_si256(acc, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + i)));
  }
  if (!_mm256_testz_si256(acc, acc)) return false;
  std::uint64_t tail = 0;
  for (; i < words; ++i) tail |= row[i];
  return tail == 0;
}

}  // namespace

const Gf2Kernels& avx2_kernels() {
  static const Gf2Kernels k{"avx2", &xor_rows_avx2, &is_zero_avx2};
  return k;
}

}  // namespace wrp::simd

#endif
