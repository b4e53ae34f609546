#include <cstdlib>
#include <string>

#include "ghost/error.hpp"
#include "ghost/simd/kernels.hpp"

namespace ghost::simd {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "scalar";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(GHOST_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(GHOST_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

namespace {

Isa detect() noexcept {
  if (const char* forced = std::getenv("GHOST_SIMD")) {
    const std::string name(forced);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (name == isa_name(isa) && isa_supported(isa)) return isa;
    }
  }
  if (isa_supported(Isa::Avx2)) return Isa::Avx2;
  if (isa_supported(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

}  // namespace

Isa active_isa() noexcept {
  static const Isa isa = detect();
  return isa;
}

void evaluate_with(Isa isa, const RateKernel& kernel, Output mode, std::span<const double> x,
                   std::span<double> out) {
  if (x.size() != out.size()) {
    throw Error(Errc::InvalidArgument, "kernel input and output sizes differ");
  }
  if (!isa_supported(isa)) {
    throw Error(Errc::InvalidArgument, "ISA not supported on this host: " + std::string(isa_name(isa)));
  }
  switch (isa) {
    case Isa::Scalar:
      detail::evaluate_scalar(kernel, mode, x.data(), out.data(), x.size());
      return;
    case Isa::Avx2:
#if defined(GHOST_HAVE_AVX2)
      detail::evaluate_avx2(kernel, mode, x.data(), out.data(), x.size());
      return;
#else
      break;
#endif
    case Isa::Neon:
#if defined(GHOST_HAVE_NEON)
      detail::evaluate_neon(kernel, mode, x.data(), out.data(), x.size());
      return;
#else
      break;
#endif
  }
  detail::evaluate_scalar(kernel, mode, x.data(), out.data(), x.size());
}

void evaluate(const RateKernel& kernel, Output mode, std::span<const double> x,
              std::span<double> out) {
  evaluate_with(active_isa(), kernel, mode, x, out);
}

}  // namespace ghost::simd
