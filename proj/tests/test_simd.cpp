#include "psdo/rng.hpp"
#include "psdo/simd/kernels.hpp"

#include <doctest.h>

#include <vector>

using namespace psdo;
using psdo::simd::cplx;

namespace {

double close(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("every available isa agrees with the scalar reference") {
  const auto& ref = simd::table(simd::Isa::scalar);
  for (simd::Isa isa : {simd::Isa::scalar, simd::Isa::avx2}) {
    if (!simd::isa_available(isa)) continue;
    const auto& k = simd::table(isa);
    CAPTURE(simd::isa_name(isa));
    Rng rng(3);
    for (std::size_t n : {0UL, 1UL, 2UL, 3UL, 7UL, 8UL, 9UL, 33UL, 1000UL}) {
      const auto a = rng.complex_normal(n);
      const auto b = rng.complex_normal(n);
      const cplx alpha(0.3, -1.2);
      CHECK(close(k.dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n)) < 1e-13);
      CHECK(close(k.dotc(a.data(), b.data(), n), ref.dotc(a.data(), b.data(), n)) < 1e-13);
      CHECK(std::abs(k.norm_sq(a.data(), n) - ref.norm_sq(a.data(), n)) <= 1e-13 * (1.0 + ref.norm_sq(a.data(), n)));

      std::vector<cplx> y1 = b, y2 = b, o1(n), o2(n);
      k.axpy(alpha, a.data(), y1.data(), n);
      ref.axpy(alpha, a.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(close(y1[i], y2[i]) < 1e-15);
      k.mul(a.data(), b.data(), o1.data(), n);
      ref.mul(a.data(), b.data(), o2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(close(o1[i], o2[i]) < 1e-15);
      k.mulc(a.data(), b.data(), o1.data(), n);
      ref.mulc(a.data(), b.data(), o2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(close(o1[i], o2[i]) < 1e-15);
    }
  }
}

TEST_CASE("scalar kernels match std::complex arithmetic") {
  Rng rng(9);
  const auto a = rng.complex_normal(17);
  const auto b = rng.complex_normal(17);
  cplx dot = 0.0, dotc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    dotc += a[i] * std::conj(b[i]);
  }
  CHECK(close(simd::scalar::dot(a.data(), b.data(), a.size()), dot) < 1e-14);
  CHECK(close(simd::scalar::dotc(a.data(), b.data(), a.size()), dotc) < 1e-14);
}

TEST_CASE("active isa is reported") {
  const auto name = simd::isa_name(simd::active().isa);
  CHECK((name == "scalar" || name == "avx2"));
}

}  // TEST_SUITE
