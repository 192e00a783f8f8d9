#ifndef FOEVAL_KERNELS_HPP
#define FOEVAL_KERNELS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

// Data-parallel inner loops used by the spectral and tracking code paths.
// Every kernel has a scalar reference implementation; on x86-64 an AVX2/FMA
// variant is selected at startup when the CPU supports it. The two variants
// are equivalence-tested against each other (summation order differs, so
// results may disagree in the last few ulps).
namespace foeval::kernels {

enum class Isa { scalar, avx2 };

// Highest ISA usable on this CPU.
Isa best_supported_isa();

// Currently active ISA for the dispatched entry points below.
Isa active_isa();

// Force an ISA (used by the equivalence tests). Returns false and leaves the
// dispatch unchanged if the CPU cannot run it.
bool set_isa(Isa isa);

const char* isa_name(Isa isa);

// dst[i] = a[i] * b[i]
void multiply(double* dst, const double* a, const double* b, std::size_t n);

// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);

// sum_i x[i]^2
double sum_squares(const double* x, std::size_t n);

// dst[i] = re[i]^2 + im[i]^2 from interleaved (re,im) pairs; n = pair count.
void power_from_complex(double* dst, const double* interleaved, std::size_t n);

// sum_{k=1..count} v[k*stride]^2 -- the harmonic-profile inner loop on a
// uniform frequency grid. Caller guarantees count*stride is a valid index.
double strided_sum_squares(const double* v, std::size_t stride,
                           std::size_t count);

// Reference implementations, always available regardless of dispatch.
namespace scalar {
void multiply(double* dst, const double* a, const double* b, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double sum_squares(const double* x, std::size_t n);
void power_from_complex(double* dst, const double* interleaved, std::size_t n);
double strided_sum_squares(const double* v, std::size_t stride,
                           std::size_t count);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void multiply(double* dst, const double* a, const double* b, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double sum_squares(const double* x, std::size_t n);
void power_from_complex(double* dst, const double* interleaved, std::size_t n);
double strided_sum_squares(const double* v, std::size_t stride,
                           std::size_t count);
}  // namespace avx2
#endif

}  // namespace foeval::kernels

#endif  // FOEVAL_KERNELS_HPP
