#include "foeval/fft.hpp"

#include <cmath>
#include <memory>
#include <unordered_map>

#include "foeval/error.hpp"

namespace foeval::fft {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::size_t smallest_factor(std::size_t n) {
  for (std::size_t r : {2u, 3u, 5u, 7u}) {
    if (n % r == 0) return r;
  }
  for (std::size_t r = 11; r * r <= n; r += 2) {
    if (n % r == 0) return r;
  }
  return n;
}

}  // namespace

Plan::Plan(std::size_t n) : n_(n) {
  if (n == 0) throw InvalidInput("fft: zero-length transform");
  twiddles_.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double angle = -kTwoPi * static_cast<double>(t) / n;
    twiddles_[t] = {std::cos(angle), std::sin(angle)};
  }
  scratch_.resize(n);
}

void Plan::forward(std::complex<double>* data) {
  if (n_ == 1) return;
  transform(data, scratch_.data(), n_, 1);
}

// Recursive decimation-in-time over the smallest prime factor. `stride`
// converts local twiddle exponents into root-table indices.
void Plan::transform(std::complex<double>* data, std::complex<double>* scratch,
                     std::size_t n, std::size_t stride) {
  if (n == 1) return;
  const std::size_t radix = smallest_factor(n);
  const std::size_t m = n / radix;

  if (m > 1) {
    // Gather the radix decimated subsequences and transform each.
    for (std::size_t j = 0; j < radix; ++j) {
      for (std::size_t t = 0; t < m; ++t) scratch[j * m + t] = data[t * radix + j];
    }
    for (std::size_t j = 0; j < radix; ++j) {
      transform(scratch + j * m, data, m, stride * radix);
    }
  } else {
    for (std::size_t j = 0; j < radix; ++j) scratch[j] = data[j];
  }

  // Combine: X[q + s*m] = sum_j W_n^{j*q} * W_radix^{j*s} * F_j[q].
  for (std::size_t q = 0; q < m; ++q) {
    for (std::size_t s = 0; s < radix; ++s) {
      std::complex<double> acc = scratch[q];  // j = 0 term
      for (std::size_t j = 1; j < radix; ++j) {
        const std::size_t exponent = (j * (q + s * m)) % n;
        acc += twiddles_[(exponent * stride) % n_] * scratch[j * m + q];
      }
      data[q + s * m] = acc;
    }
  }
}

void forward(std::vector<std::complex<double>>& data) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<Plan>> cache;
  auto& plan = cache[data.size()];
  if (!plan) plan = std::make_unique<Plan>(data.size());
  plan->forward(data.data());
}

}  // namespace foeval::fft
