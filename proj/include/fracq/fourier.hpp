#pragma once

#include <complex>
#include <span>
#include <vector>

namespace fracq::fourier {

// Unnormalised forward transform X_k = sum_j x_j e^{-2 pi i jk/n}; the inverse
// carries the 1/n factor, so inverse(forward(x)) == x.

void forward_inplace(std::span<std::complex<double>> data);
void inverse_inplace(std::span<std::complex<double>> data);

std::vector<std::complex<double>> forward(std::span<const std::complex<double>> data);
std::vector<std::complex<double>> inverse(std::span<const std::complex<double>> data);

}  // namespace fracq::fourier
