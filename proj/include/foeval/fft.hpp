#ifndef FOEVAL_FFT_HPP
#define FOEVAL_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace foeval::fft {

// Forward complex FFT (negative-exponent convention, no normalization).
// Mixed-radix Cooley-Tukey; any length >= 1 is accepted, lengths whose
// factors are {2,3,5} run on the fast path. Plans cache twiddles per length.
class Plan {
 public:
  explicit Plan(std::size_t n);

  std::size_t size() const { return n_; }

  // In-place transform of exactly size() elements.
  void forward(std::complex<double>* data);

 private:
  void transform(std::complex<double>* data, std::complex<double>* scratch,
                 std::size_t n, std::size_t stride);

  std::size_t n_;
  std::vector<std::complex<double>> twiddles_;  // e^{-2*pi*i*t/n}, t in [0,n)
  std::vector<std::complex<double>> scratch_;
};

// Convenience wrapper with a per-thread plan cache keyed by length.
void forward(std::vector<std::complex<double>>& data);

}  // namespace foeval::fft

#endif  // FOEVAL_FFT_HPP
