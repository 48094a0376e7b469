#pragma once

#include <limits>
#include <vector>

#include "eplab/field.hpp"
#include "eplab/grid.hpp"

namespace eplab {

// Dyadic Littlewood-Paley multipliers sampled on the grid's frequency
// lattice. The low-frequency cutoff chi equals 1 on |xi| <= 1 and vanishes
// for |xi| >= 4/3; the ring function is phi(xi) = chi(xi/2) - chi(xi), so
//   chi(xi) + sum_{j=0}^{J} phi(2^{-j} xi) = chi(2^{-J-1} xi)
// telescopes to 1 once 2^{J+1} exceeds the largest lattice frequency.
class DyadicPartition {
public:
    explicit DyadicPartition(GridPtr grid);

    const GridPtr& grid() const { return grid_; }
    int j_max() const { return j_max_; }

    // j = -1 is the chi block, j in [0, j_max] the rings.
    const std::vector<double>& multiplier(int j) const;

    // chi + sum of rings evaluated at flat lattice index (diagnostics).
    double partition_sum(long flat) const;

    // radial profiles, usable off-lattice
    static double chi(double radius);
    static double ring(double radius);

private:
    GridPtr grid_;
    int j_max_;
    std::vector<std::vector<double>> tables_;  // tables_[0] = chi, tables_[1+j] = phi_j
};

DyadicPartition build_partition(GridPtr grid);

struct NormSpec {
    double s = 0.0;
    double p = 2.0;  // std::numeric_limits<double>::infinity() for L^inf
    double r = 2.0;
};

ScalarField lp_block(const ScalarField& f, int j, const DyadicPartition& P);
VectorField lp_block(const VectorField& u, int j, const DyadicPartition& P);

// S_j = sum of blocks strictly below j.
ScalarField low_cutoff(const ScalarField& f, int j, const DyadicPartition& P);
VectorField low_cutoff(const VectorField& u, int j, const DyadicPartition& P);

// || (2^{js} ||Delta_j f||_{L^p})_j ||_{l^r}; certified for p = r = 2,
// computed best-effort otherwise.
double besov_norm(const ScalarField& f, const NormSpec& spec, const DyadicPartition& P);
double besov_norm(const VectorField& u, const NormSpec& spec, const DyadicPartition& P);

// sqrt( sum_modes (1 + |xi|^2)^s |fhat|^2 ) with Parseval normalization.
double sobolev_norm(const ScalarField& f, double s);
double sobolev_norm(const VectorField& u, double s);

double linf_norm(const ScalarField& f);
double linf_norm(const VectorField& u);

}  // namespace eplab
