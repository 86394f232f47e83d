#include "psdo/simd/kernels.hpp"

#include "psdo/error.hpp"

#include <cstdlib>
#include <string>

namespace psdo::simd {

namespace {

constexpr KernelTable kScalarTable{Isa::scalar,   scalar::dot, scalar::dotc,   scalar::axpy,
                                   scalar::mul,   scalar::mulc, scalar::norm_sq};

#if defined(PSDO_WITH_AVX2)
constexpr KernelTable kAvx2Table{Isa::avx2, avx2::dot,  avx2::dotc,   avx2::axpy,
                                 avx2::mul, avx2::mulc, avx2::norm_sq};
#endif

bool cpu_has_avx2() noexcept {
#if defined(PSDO_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& select() noexcept {
  const char* forced = std::getenv("PSDO_SIMD");
  if (forced != nullptr && std::string(forced) == "scalar") return kScalarTable;
#if defined(PSDO_WITH_AVX2)
  if (cpu_has_avx2()) return kAvx2Table;
#endif
  return kScalarTable;
}

}  // namespace

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return cpu_has_avx2();
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (isa == Isa::scalar) return kScalarTable;
#if defined(PSDO_WITH_AVX2)
  if (isa == Isa::avx2 && cpu_has_avx2()) return kAvx2Table;
#endif
  throw Error(Errc::invalid_params, std::string("ISA not available: ") + std::string(isa_name(isa)));
}

const KernelTable& active() noexcept {
  static const KernelTable& chosen = select();
  return chosen;
}

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace psdo::simd
