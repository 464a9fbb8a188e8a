#ifndef LPLAB_FFT_HPP
#define LPLAB_FFT_HPP

#include <complex>
#include <vector>

#include "lplab/grid.hpp"

namespace lplab {

// Physical samples from spectral amplitudes (unnormalized backward DFT):
//   f(x_i) = sum_k coef(k) exp(+i xi_k . x_i)
std::vector<std::complex<double>> to_physical(const Grid& g,
                                              const std::vector<std::complex<double>>& coef);

// Spectral amplitudes from physical samples (forward DFT divided by N^d).
std::vector<std::complex<double>> to_spectral(const Grid& g,
                                              const std::vector<std::complex<double>>& phys);

} // namespace lplab

#endif
