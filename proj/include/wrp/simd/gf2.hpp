#pragma once

#include <cstddef>
#include <cstdint>

namespace wrp::simd {

// Bit-row kernels used by the GF(2) elimination inside reduce. Rows are
// little-endian arrays of 64-bit words; bit i of the row lives at
// word i/64, bit i%64.
struct Gf2Kernels {
  const char* name;
  void (*xor_rows)(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
  bool (*is_zero)(const std::uint64_t* row, std::size_t words);
};

const Gf2Kernels& scalar_kernels();

#if defined(__x86_64__) || defined(_M_X64)
const Gf2Kernels& avx2_kernels();
bool cpu_supports_avx2();
#endif

#if defined(__aarch64__)
const Gf2Kernels& neon_kernels();
#endif

// Kernels selected once per process: the widest variant the CPU supports,
// overridable with WRP_KERNELS=scalar|avx2|neon. Unknown or unsupported
// values raise an error on first use.
const Gf2Kernels& active_kernels();

}  // namespace wrp::simd
