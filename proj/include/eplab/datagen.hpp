#pragma once

#include "eplab/field.hpp"
#include "eplab/grid.hpp"

namespace eplab {

// Cutoff profiles: phi = 1 on |x| <= 1, 0 on |x| >= 2; Phi = 1 on |x| <= 2,
// 0 on |x| >= 4, so Phi * phi = phi identically. Built from the same smooth
// step as the dyadic partition.
class BumpPair {
public:
    BumpPair();

    double phi(double x) const;
    double phi_prime(double x) const;
    double Phi(double x) const;

    // ||phi||_{L2(R)}, adaptive quadrature to 1e-10 relative, cached
    double phi_l2() const { return phi_l2_; }

private:
    double phi_l2_;
};

BumpPair make_bumps();

struct ConstructionParams {
    int n = 8;           // carrier frequency
    double delta = 0.25; // envelope width exponent, in (0, 1/2)
    int omega = 1;       // +1 or -1
    double s = 2.6;      // regularity index, > 1 + d/2
    int dim = 2;
};

// Periodic box sized for a sweep up to n_max: axis-1 period 16 * n_max^delta
// (the widest Phi support plus 25% padding per side), fixed period 16 on the
// transverse axes. Axis-1 resolution covers frequency n + 10 n^delta inside
// the dealiased zone with >= 8 points per carrier oscillation.
GridPtr construction_grid(int n_max, double delta, int dim);

// u^h(t): first component n^{-delta/2-s} phi(x1/n^delta) sin(n x1 - omega t)
// phi(x2)...phi(xd), remaining components zero.
VectorField high_freq_field(const GridPtr& grid, const BumpPair& bumps,
                            const ConstructionParams& p, double t);

// Exact d/dt of the above.
VectorField high_freq_time_derivative(const GridPtr& grid, const BumpPair& bumps,
                                      const ConstructionParams& p, double t);

// u^l(0): first component omega * n^{-1} Phi(x1/n^delta) Phi(x2)...Phi(xd).
VectorField low_freq_initial(const GridPtr& grid, const BumpPair& bumps,
                             const ConstructionParams& p);

// u^h(0) + u^l(0)
VectorField combined_initial(const GridPtr& grid, const BumpPair& bumps,
                             const ConstructionParams& p);

// F = u^h.grad(u^h) + u^h.grad(u^l) - P(u^l,u^h) - P(u^h,u^l) - P(u^h,u^h),
// assembled from the pseudospectral primitives.
VectorField error_F(const VectorField& u_l, const VectorField& u_h);

struct ErrorEDecomposition {
    VectorField total;  // d/dt u^h + u^l.grad(u^h)
    VectorField e11;    // [u^l_1(t) - u^l_1(0)] modulation term
    VectorField e12;    // phi' term, prefactor n^{-s-3 delta/2}
    VectorField e13;    // transverse d_i phi-tilde sum
};

// Requires u_l_t (the low-frequency solution at time t) and u_l_0 (its
// initial datum); verifies total = e11 + e12 + e13 within 1e-10 relative and
// that components 2..d vanish.
ErrorEDecomposition error_E(const GridPtr& grid, const BumpPair& bumps,
                            const ConstructionParams& p, double t,
                            const VectorField& u_l_t, const VectorField& u_l_0);

// Adaptive Simpson quadrature of f over [a, b] to the given relative
// tolerance (used for the cached profile norms).
double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double rel_tol);

}  // namespace eplab
