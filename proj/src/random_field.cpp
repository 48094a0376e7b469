#include "eplab/random_field.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace eplab {

namespace {

double gaussian(std::mt19937_64& rng) {
    // Box-Muller on explicit 53-bit uniforms, to keep the stream
    // implementation-independent.
    const double u1 = (rng() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    const double u2 = (rng() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

ScalarField random_band_limited(const GridPtr& grid, double k_max, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> noise(grid->total_points());
    for (double& v : noise) v = gaussian(rng);

    ScalarField white = ScalarField::from_physical(grid, std::move(noise));
    const auto& fsq = grid->freq_sq();
    std::vector<cplx> shaped(white.spectral());
    const double inv_k2 = 1.0 / (k_max * k_max);
    for (size_t i = 0; i < shaped.size(); ++i) {
        if (fsq[i] > k_max * k_max)
            shaped[i] = 0.0;
        else
            shaped[i] *= std::exp(-2.0 * fsq[i] * inv_k2);
    }
    ScalarField f = ScalarField::from_spectral(grid, std::move(shaped));
    const double norm = f.l2_norm();
    return norm > 0.0 ? scale(1.0 / norm, f) : f;
}

VectorField random_band_limited_vector(const GridPtr& grid, double k_max,
                                       std::uint64_t seed) {
    std::vector<ScalarField> comps;
    comps.reserve(grid->dim());
    for (int i = 0; i < grid->dim(); ++i)
        comps.push_back(random_band_limited(grid, k_max, seed * 1000003ULL + i));
    return VectorField(std::move(comps));
}

}  // namespace eplab
