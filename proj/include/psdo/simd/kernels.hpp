#pragma once

// Complex-double inner loops shared by every module. Each kernel has a scalar
// reference implementation and, on x86-64, an AVX2/FMA variant; the variant is
// picked once at startup from CPUID and can be pinned with PSDO_SIMD=scalar.
//
// Reductions use a fixed accumulation order per ISA, so results are
// bit-reproducible on a given machine regardless of thread count.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace psdo::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  // sum_i a[i] * b[i]
  cplx (*dot)(const cplx* a, const cplx* b, std::size_t n);
  // sum_i a[i] * conj(b[i])
  cplx (*dotc)(const cplx* a, const cplx* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  // out[i] = a[i] * b[i]
  void (*mul)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
  // out[i] = a[i] * conj(b[i])
  void (*mulc)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
  // sum_i |a[i]|^2
  double (*norm_sq)(const cplx* a, std::size_t n);
};

namespace scalar {
cplx dot(const cplx* a, const cplx* b, std::size_t n);
cplx dotc(const cplx* a, const cplx* b, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n);
void mulc(const cplx* a, const cplx* b, cplx* out, std::size_t n);
double norm_sq(const cplx* a, std::size_t n);
}  // namespace scalar

#if defined(PSDO_WITH_AVX2)
namespace avx2 {
cplx dot(const cplx* a, const cplx* b, std::size_t n);
cplx dotc(const cplx* a, const cplx* b, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n);
void mulc(const cplx* a, const cplx* b, cplx* out, std::size_t n);
double norm_sq(const cplx* a, std::size_t n);
}  // namespace avx2
#endif

bool isa_available(Isa isa) noexcept;
const KernelTable& table(Isa isa);
const KernelTable& active() noexcept;
std::string_view isa_name(Isa isa) noexcept;

inline cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
  return active().dotc(a.data(), b.data(), a.size());
}
inline void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline void mul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  active().mul(a.data(), b.data(), out.data(), a.size());
}
inline void mulc(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  active().mulc(a.data(), b.data(), out.data(), a.size());
}
inline double norm_sq(std::span<const cplx> a) { return active().norm_sq(a.data(), a.size()); }

}  // namespace psdo::simd
