#include <cstdlib>
#include <string>

#include "wrp/errors.hpp"
#include "wrp/simd/gf2.hpp"

namespace wrp::simd {

#if defined(__x86_64__) || defined(_M_X64)
bool cpu_supports_avx2() { return __builtin_cpu_supports("avx2") != 0; }
#endif

namespace {

const Gf2Kernels& pick_kernels() {
  const char* env = std::getenv("WRP_KERNELS");
  if (env != nullptr && *env != '\0') {
    std::string want(env);
    if (want == "scalar") return scalar_kernels();
#if defined(__x86_64__) || defined(_M_X64)
    if (want == "avx2") {
      if (!cpu_supports_avx2()) throw Error("WRP_KERNELS=avx2 but the CPU lacks AVX2");
      return avx2_kernels();
    }
#endif
#if defined(__aarch64__)
    if (want == "neon") return neon_kernels();
#endif
    throw Error("WRP_KERNELS=" + want + " is not available on this build");
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (cpu_supports_avx2()) return avx2_kernels();
#endif
#if defined(__aarch64__)
  return neon_kernels();
#endif
  return scalar_kernels();
}

}  // namespace

const Gf2Kernels& active_kernels() {
  static const Gf2Kernels& chosen = pick_kernels();
  return chosen;
}

}  // namespace wrp::simd
