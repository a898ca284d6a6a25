#include "zsnft/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <mutex>
#include <stdexcept>

namespace zsnft::simd {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

std::atomic<const KernelTable*> g_active{nullptr};
std::once_flag g_once;

const KernelTable* resolve_from_env() {
  const char* env = std::getenv("ZSNFT_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return &scalar_table();
  if (env && std::strcmp(env, "avx2") == 0) {
    const KernelTable* t = cpu_has_avx2() ? avx2_table() : nullptr;
    if (!t) throw std::runtime_error("ZSNFT_SIMD=avx2 requested but AVX2 is unavailable");
    return t;
  }
  // auto
  if (cpu_has_avx2())
    if (const KernelTable* t = avx2_table()) return t;
  return &scalar_table();
}

}  // namespace

const KernelTable& kernels() {
  std::call_once(g_once, [] { g_active.store(resolve_from_env()); });
  return *g_active.load();
}

const KernelTable& kernels(IsaLevel level) {
  if (level == IsaLevel::scalar) return scalar_table();
  const KernelTable* t = cpu_has_avx2() ? avx2_table() : nullptr;
  if (!t) throw std::runtime_error("AVX2 kernels unavailable on this host/build");
  return *t;
}

IsaLevel active_level() {
  return &kernels() == &scalar_table() ? IsaLevel::scalar : IsaLevel::avx2;
}

void force_level(IsaLevel level) {
  const KernelTable& t = kernels(level);  // validates availability
  kernels();                              // ensure resolved before overriding
  g_active.store(&t);
}

std::string active_name() { return kernels().name; }

}  // namespace zsnft::simd
