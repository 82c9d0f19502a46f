// Runtime backend selection: AVX2 when the CPU reports it, scalar otherwise.
// select_backend("scalar"|"avx2"|"auto") lets tests and the CLI pin one.
#include "amo/kernels.hpp"

#include <stdexcept>
#include <string>

namespace amo::kernels {

namespace {
const Backend* g_forced = nullptr;
}

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && avx2_backend().det_minors != nullptr;
#else
  return false;
#endif
}

const Backend& active_backend() {
  if (g_forced) return *g_forced;
  return avx2_available() ? avx2_backend() : scalar_backend();
}

void select_backend(const char* which) {
  const std::string w = which ? which : "auto";
  if (w == "auto") {
    g_forced = nullptr;
  } else if (w == "scalar") {
    g_forced = &scalar_backend();
  } else if (w == "avx2") {
    if (!avx2_available()) throw std::runtime_error("avx2 backend not available on this cpu");
    g_forced = &avx2_backend();
  } else {
    throw std::invalid_argument("unknown kernel backend: " + w);
  }
}

}  // namespace amo::kernels
