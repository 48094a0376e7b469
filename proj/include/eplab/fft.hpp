#pragma once

#include <complex>
#include <vector>

#include "eplab/grid.hpp"

namespace eplab::fft {

// Parseval-consistent discrete transform pair:
//   fhat = sqrt(vol_elem / N_total) * DFT(f)
// so that  sum_points |f|^2 * vol_elem == sum_modes |fhat|^2,
// i.e. the spectral l2 norm equals the physical L2(box) norm.
// Plans are cached per grid shape and guarded by a mutex; execution is
// thread-safe on distinct buffers.
std::vector<std::complex<double>> forward(const TorusGrid& grid,
                                          const std::vector<double>& physical);

std::vector<double> inverse(const TorusGrid& grid,
                            const std::vector<std::complex<double>>& spectral);

}  // namespace eplab::fft
