// Compiled with -mavx2 -mfma. Only reached through the dispatcher after a
// CPUID check, so nothing here may be inlined into baseline code.

#include "psdo/simd/kernels.hpp"

#include <immintrin.h>

namespace psdo::simd::avx2 {

namespace {

// One __m256d holds two complex doubles: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }
inline __m256d swap_ri(__m256d v) { return _mm256_permute_pd(v, 0x5); }

inline double hsum_even(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return (t[0] + t[2]);
}
inline double hsum_odd(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return (t[1] + t[3]);
}

}  // namespace

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
  // acc_p collects (ar*br, ai*bi), acc_x collects (ar*bi, ai*br).
  __m256d acc_p0 = _mm256_setzero_pd(), acc_p1 = _mm256_setzero_pd();
  __m256d acc_x0 = _mm256_setzero_pd(), acc_x1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va0 = load2(a + i), vb0 = load2(b + i);
    const __m256d va1 = load2(a + i + 2), vb1 = load2(b + i + 2);
    acc_p0 = _mm256_fmadd_pd(va0, vb0, acc_p0);
    acc_x0 = _mm256_fmadd_pd(va0, swap_ri(vb0), acc_x0);
    acc_p1 = _mm256_fmadd_pd(va1, vb1, acc_p1);
    acc_x1 = _mm256_fmadd_pd(va1, swap_ri(vb1), acc_x1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d va = load2(a + i), vb = load2(b + i);
    acc_p0 = _mm256_fmadd_pd(va, vb, acc_p0);
    acc_x0 = _mm256_fmadd_pd(va, swap_ri(vb), acc_x0);
  }
  const __m256d p = _mm256_add_pd(acc_p0, acc_p1);
  const __m256d x = _mm256_add_pd(acc_x0, acc_x1);
  double re = hsum_even(p) - hsum_odd(p);
  double im = hsum_even(x) + hsum_odd(x);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

cplx dotc(const cplx* a, const cplx* b, std::size_t n) {
  __m256d acc_p0 = _mm256_setzero_pd(), acc_p1 = _mm256_setzero_pd();
  __m256d acc_x0 = _mm256_setzero_pd(), acc_x1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va0 = load2(a + i), vb0 = load2(b + i);
    const __m256d va1 = load2(a + i + 2), vb1 = load2(b + i + 2);
    acc_p0 = _mm256_fmadd_pd(va0, vb0, acc_p0);
    acc_x0 = _mm256_fmadd_pd(va0, swap_ri(vb0), acc_x0);
    acc_p1 = _mm256_fmadd_pd(va1, vb1, acc_p1);
    acc_x1 = _mm256_fmadd_pd(va1, swap_ri(vb1), acc_x1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d va = load2(a + i), vb = load2(b + i);
    acc_p0 = _mm256_fmadd_pd(va, vb, acc_p0);
    acc_x0 = _mm256_fmadd_pd(va, swap_ri(vb), acc_x0);
  }
  const __m256d p = _mm256_add_pd(acc_p0, acc_p1);
  const __m256d x = _mm256_add_pd(acc_x0, acc_x1);
  // re = ar*br + ai*bi, im = ai*br - ar*bi
  double re = hsum_even(p) + hsum_odd(p);
  double im = hsum_odd(x) - hsum_even(x);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].imag() * b[i].real() - a[i].real() * b[i].imag();
  }
  return {re, im};
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d c = _mm256_set1_pd(alpha.real());
  const __m256d s = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = load2(x + i);
    // even lanes: c*xr - s*xi, odd lanes: c*xi + s*xr
    const __m256d prod = _mm256_fmaddsub_pd(vx, c, _mm256_mul_pd(swap_ri(vx), s));
    store2(y + i, _mm256_add_pd(load2(y + i), prod));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + (alpha.real() * xr - alpha.imag() * xi),
            y[i].imag() + (alpha.real() * xi + alpha.imag() * xr)};
  }
}

void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = load2(a + i), vb = load2(b + i);
    const __m256d b_re = _mm256_movedup_pd(vb);
    const __m256d b_im = _mm256_permute_pd(vb, 0xF);
    store2(out + i, _mm256_fmaddsub_pd(va, b_re, _mm256_mul_pd(swap_ri(va), b_im)));
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = {ar * br - ai * bi, ar * bi + ai * br};
  }
}

void mulc(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = load2(a + i), vb = load2(b + i);
    const __m256d b_re = _mm256_movedup_pd(vb);
    const __m256d b_im = _mm256_permute_pd(vb, 0xF);
    // even lanes: ar*br + ai*bi, odd lanes: ai*br - ar*bi
    store2(out + i, _mm256_fmsubadd_pd(va, b_re, _mm256_mul_pd(swap_ri(va), b_im)));
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = {ar * br + ai * bi, ai * br - ar * bi};
  }
}

double norm_sq(const cplx* a, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = load2(a + i), v1 = load2(a + i + 2);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d v = load2(a + i);
    acc0 = _mm256_fmadd_pd(v, v, acc0);
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  double total = hsum_even(acc) + hsum_odd(acc);
  for (; i < n; ++i) total += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return total;
}

}  // namespace psdo::simd::avx2
