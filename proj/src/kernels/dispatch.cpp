#include <cstdlib>
#include <cstring>

#include "lvdt/error.hpp"
#include "variants.hpp"

namespace lvdt::kernels {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

const KernelTable& scalar_table() noexcept { return detail::kScalarTable; }

const KernelTable* avx2_table() noexcept {
#if defined(LVDT_HAVE_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported ? &detail::kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_table() noexcept {
#if defined(LVDT_HAVE_NEON)
  return &detail::kNeonTable;
#else
  return nullptr;
#endif
}

const KernelTable& active_table() noexcept {
  static const KernelTable* table = [] {
    if (const char* env = std::getenv("LVDT_FORCE_SCALAR"); env && std::strcmp(env, "1") == 0) {
      return &detail::kScalarTable;
    }
    if (const KernelTable* t = avx2_table()) return t;
    if (const KernelTable* t = neon_table()) return t;
    return &detail::kScalarTable;
  }();
  return *table;
}

namespace {

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorCode::shape_mismatch, "kernel operands differ in length");
}

}  // namespace

double sum(std::span<const double> x) { return active_table().sum(x.data(), x.size()); }

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size());
  return active_table().dot(a.data(), b.data(), a.size());
}

CenteredMoments centered_moments(std::span<const double> x, std::span<const double> y,
                                 double mean_x, double mean_y) {
  require_same_length(x.size(), y.size());
  return active_table().centered_moments(x.data(), y.data(), x.size(), mean_x, mean_y);
}

QuadratureSums quadrature_sums(std::span<const double> y, std::span<const double> s,
                               std::span<const double> c) {
  require_same_length(y.size(), s.size());
  require_same_length(y.size(), c.size());
  return active_table().quadrature_sums(y.data(), s.data(), c.data(), y.size());
}

}  // namespace lvdt::kernels
