#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qle/simd.hpp"

#ifdef QLE_HAVE_AVX2
#include "kernels_avx2.hpp"
#endif

namespace qle::simd {

namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::dot, &scalar::dot3, &scalar::axpy,
                              &scalar::mul};

#ifdef QLE_HAVE_AVX2
constexpr KernelTable kAvx2{Isa::avx2, &avx2::dot, &avx2::dot3, &avx2::axpy, &avx2::mul};
#endif

const KernelTable& select() {
  if (const char* env = std::getenv("QLELAB_SIMD"); env && std::string(env) == "scalar") {
    return kScalar;
  }
  if (avx2_available()) return kernels_for(Isa::avx2);
  return kScalar;
}

}  // namespace

bool avx2_available() {
#ifdef QLE_HAVE_AVX2
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

const KernelTable& kernels_for(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return kScalar;
    case Isa::avx2:
#ifdef QLE_HAVE_AVX2
      if (avx2_available()) return kAvx2;
#endif
      throw std::invalid_argument("simd: avx2 kernels unavailable on this build/CPU");
  }
  return kScalar;
}

const KernelTable& kernels() {
  static const KernelTable& table = select();
  return table;
}

std::string_view isa_name(Isa isa) {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

}  // namespace qle::simd
