#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "halfline/simd.hpp"

namespace halfline::simd {

namespace {

bool cpu_has_avx2() {
#if defined(HALFLINE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa default_isa() {
  if (const char* env = std::getenv("HALFLINE_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && supported(Isa::avx2)) return Isa::avx2;
  }
  return supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<const Kernels*>& active_slot() {
  static std::atomic<const Kernels*> slot{&kernels_for(default_isa())};
  return slot;
}

}  // namespace

bool supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2: {
      static const bool ok = cpu_has_avx2();
      return ok;
    }
  }
  return false;
}

const Kernels& kernels_for(Isa isa) {
  if (!supported(isa)) {
    throw std::runtime_error("SIMD variant '" + std::string(name(isa)) +
                             "' is not available on this CPU/build");
  }
  switch (isa) {
    case Isa::scalar:
      return detail::kScalarKernels;
    case Isa::avx2:
#if defined(HALFLINE_HAVE_AVX2)
      return detail::kAvx2Kernels;
#else
      break;
#endif
  }
  return detail::kScalarKernels;
}

const Kernels& active() { return *active_slot().load(std::memory_order_acquire); }

void set_active(Isa isa) { active_slot().store(&kernels_for(isa), std::memory_order_release); }

std::string_view name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace halfline::simd
