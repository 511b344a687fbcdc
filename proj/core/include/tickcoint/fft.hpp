#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace tickcoint::fft {

using Complex = std::complex<double>;

// Unnormalized DFT, X_k = sum_j x_j exp(sign * 2 pi i j k / n) with sign = -1
// for forward and +1 for backward. Plans are cached per (size, direction)
// and execution is thread-safe.
std::vector<Complex> forward(std::span<const Complex> x);
std::vector<Complex> backward(std::span<const Complex> x);

// Forward transform of a real sequence (full complex output, length n).
std::vector<Complex> forward_real(std::span<const double> x);

std::size_t next_pow2(std::size_t n) noexcept;

}  // namespace tickcoint::fft
