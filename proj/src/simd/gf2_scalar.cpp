#include "wrp/simd/gf2.hpp"

namespace wrp::simd {

namespace {

void xor_rows_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] ^= src[i];
}

bool is_zero_scalar(const std::uint64_t* row, std::size_t words) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words; ++i) acc |= row[i];
  return acc == 0;
}

}  // namespace

const Gf2Kernels& scalar_kernels() {
  static const Gf2Kernels k{"scalar", &xor_rows_scalar, &is_zero_scalar};
  return k;
}

}  // namespace wrp::simd
