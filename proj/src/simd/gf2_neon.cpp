#include "wrp/simd/gf2.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace wrp::simd {

namespace {

void xor_rows_neon(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2) {
    uint64x2_t a = vld1q_u64(dst + i);
    uint64x2_t b = vld1q_u64(src + i);
    vst1q_u64(dst + i, veorq_u64(a, b));
  }
  for (; i < words; ++i) dst[i] ^= src[i];
}

bool is_zero_neon(const std::uint64_t* row, std::size_t words) {
  std::size_t i = 0;
  uint64x2_t acc = vdupq_n_u64(0);
  for (; i + 2 <= words; i += 2) {
    acc = vorrq_u64(acc, vld1q_u64(row + i));
  }
  std::uint64_t tail = vgetq_lane_u64(acc, 0) | vgetq_lane_u64(acc, 1);
  for (; i < words; ++i) tail |= row[i];
  return tail == 0;
}

}  // namespace

const Gf2Kernels& neon_kernels() {
  static const Gf2Kernels k{"neon", &xor_rows_neon, &is_zero_neon};
  return k;
}

}  // namespace wrp::simd

#endif
