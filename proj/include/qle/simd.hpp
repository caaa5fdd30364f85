#pragma once

// Data-parallel inner kernels used by the spherical-harmonic transforms and
// the quadrature reductions. Each kernel has a scalar reference version and,
// on x86-64, an AVX2+FMA version; the active table is chosen once at runtime
// from CPUID. Setting QLELAB_SIMD=scalar forces the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace qle::simd {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i a[i] * b[i] * c[i]
  double (*dot3)(const double* a, const double* b, const double* c, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out[i] = a[i] * b[i]
  void (*mul)(const double* a, const double* b, double* out, std::size_t n);
};

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double dot3(const double* a, const double* b, const double* c, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void mul(const double* a, const double* b, double* out, std::size_t n);
}  // namespace scalar

/// True when the AVX2 kernels were compiled in and the CPU supports them.
bool avx2_available();

/// Kernel table for a specific ISA. Requesting avx2 when unavailable throws
/// std::invalid_argument.
const KernelTable& kernels_for(Isa isa);

/// The table selected at first use (best available ISA unless overridden).
const KernelTable& kernels();

std::string_view isa_name(Isa isa);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return kernels().dot(a.data(), b.data(), a.size());
}

inline double dot3(std::span<const double> a, std::span<const double> b,
                   std::span<const double> c) {
  return kernels().dot3(a.data(), b.data(), c.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  kernels().axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace qle::simd
