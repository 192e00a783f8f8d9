#include "foeval/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace foeval::kernels {

namespace scalar {

void multiply(double* dst, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_squares(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

void power_from_complex(double* dst, const double* interleaved,
                        std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = interleaved[2 * i];
    const double im = interleaved[2 * i + 1];
    dst[i] = re * re + im * im;
  }
}

double strided_sum_squares(const double* v, std::size_t stride,
                           std::size_t count) {
  double acc = 0.0;
  for (std::size_t k = 1; k <= count; ++k) {
    const double s = v[k * stride];
    acc += s * s;
  }
  return acc;
}

}  // namespace scalar

namespace {

struct Dispatch {
  void (*multiply)(double*, const double*, const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum_squares)(const double*, std::size_t);
  void (*power_from_complex)(double*, const double*, std::size_t);
  double (*strided_sum_squares)(const double*, std::size_t, std::size_t);
};

constexpr Dispatch kScalar = {
    scalar::multiply, scalar::dot, scalar::sum_squares,
    scalar::power_from_complex, scalar::strided_sum_squares};

#if defined(__x86_64__) || defined(_M_X64)
constexpr Dispatch kAvx2 = {avx2::multiply, avx2::dot, avx2::sum_squares,
                            avx2::power_from_complex,
                            avx2::strided_sum_squares};

bool cpu_has_avx2() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#else
bool cpu_has_avx2() { return false; }
#endif

Isa detect_isa() {
  if (const char* env = std::getenv("FOEVAL_KERNEL_ISA")) {
    const std::string_view want(env);
    if (want == "scalar") return Isa::scalar;
    if (want == "avx2" && cpu_has_avx2()) return Isa::avx2;
  }
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa> g_isa{detect_isa()};

const Dispatch& table(Isa isa) {
#if defined(__x86_64__) || defined(_M_X64)
  if (isa == Isa::avx2) return kAvx2;
#endif
  (void)isa;
  return kScalar;
}

}  // namespace

Isa best_supported_isa() { return cpu_has_avx2() ? Isa::avx2 : Isa::scalar; }

Isa active_isa() { return g_isa.load(std::memory_order_relaxed); }

bool set_isa(Isa isa) {
  if (isa == Isa::avx2 && !cpu_has_avx2()) return false;
  g_isa.store(isa, std::memory_order_relaxed);
  return true;
}

const char* isa_name(Isa isa) {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

void multiply(double* dst, const double* a, const double* b, std::size_t n) {
  table(active_isa()).multiply(dst, a, b, n);
}

double dot(const double* a, const double* b, std::size_t n) {
  return table(active_isa()).dot(a, b, n);
}

double sum_squares(const double* x, std::size_t n) {
  return table(active_isa()).sum_squares(x, n);
}

void power_from_complex(double* dst, const double* interleaved,
                        std::size_t n) {
  table(active_isa()).power_from_complex(dst, interleaved, n);
}

double strided_sum_squares(const double* v, std::size_t stride,
                           std::size_t count) {
  return table(active_isa()).strided_sum_squares(v, stride, count);
}

}  // namespace foeval::kernels
