#pragma once

#include <string>

namespace signcert::simd {

enum class Isa { Scalar, Avx2 };

// Best instruction set available on this CPU. Setting SIGNCERT_SIMD=scalar in
// the environment forces the scalar kernels.
Isa detect();
// Isa to actually use given a caller preference (Scalar always honoured).
Isa resolve(Isa wanted);
std::string to_string(Isa isa);

}  // namespace signcert::simd
