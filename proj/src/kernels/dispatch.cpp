#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "tables.hpp"

namespace dta::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(DTA_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() {
  if (const char* env = std::getenv("DTA_KERNELS")) {
    const std::string v(env);
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2" && cpu_has_avx2()) return Backend::Avx2;
  }
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend> g_active{initial_backend()};

}  // namespace

bool supported(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
      return cpu_has_avx2();
  }
  return false;
}

const Kernels& impl([[maybe_unused]] Backend b) {
#if defined(DTA_HAVE_AVX2_TU)
  if (b == Backend::Avx2) return avx2::kTable;
#endif
  return scalar::kTable;
}

std::string_view name(Backend b) {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

Backend active() { return g_active.load(std::memory_order_relaxed); }

void set_active(Backend b) {
  if (!supported(b))
    throw std::runtime_error("kernel backend not supported on this CPU: " +
                             std::string(name(b)));
  g_active.store(b, std::memory_order_relaxed);
}

}  // namespace dta::kernels
