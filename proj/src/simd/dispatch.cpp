#include "signcert/simd/dispatch.hpp"

#include <cstdlib>
#include <cstring>

namespace signcert::simd {

Isa detect() {
  const char* env = std::getenv("SIGNCERT_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
  return Isa::Scalar;
}

Isa resolve(Isa wanted) {
  if (wanted == Isa::Scalar) return Isa::Scalar;
  return detect();
}

std::string to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

}  // namespace signcert::simd
