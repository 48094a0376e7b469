#pragma once

#include <cstdint>

#include "eplab/field.hpp"

namespace eplab {

// Deterministic smooth random fields: white noise shaped by the spectral
// filter exp(-2 (|xi|/k_max)^2), hard-cut at |xi| > k_max, normalized to
// unit L2. Same seed, same field, on any platform (hand-rolled Box-Muller
// on top of mt19937_64).
ScalarField random_band_limited(const GridPtr& grid, double k_max, std::uint64_t seed);
VectorField random_band_limited_vector(const GridPtr& grid, double k_max,
                                       std::uint64_t seed);

}  // namespace eplab
