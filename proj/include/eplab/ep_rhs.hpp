#pragma once

#include "eplab/field.hpp"

namespace eplab {

// Bilinear forms and the nonlocal operator of the velocity-form system
//   d/dt u + u.grad(u) = P(u,u) = -(1-Lap)^{-1} [ div Q(u,u) + R(u,u) ].
// Index conventions (pinned by the momentum/velocity cross-check: these are
// the unique contractions under which rhs_velocity == rhs_momentum):
//   (div Q)_j        = sum_i d_i Q_{ij}
//   Q_{ij}           = sum_k [(d_i u_k + d_k u_i) d_k v_j - d_i u_k d_j v_k]
//                      - (div u) d_i v_j + (1/2) delta_{ij} sum_{kl} d_k u_l d_k v_l
//   R_i              = (div u) v_i + sum_k u_k d_i v_k
//   ((grad u)^T m)_i = sum_k d_i u_k m_k

// Entries dealiased.
MatrixField q_bilinear(const VectorField& u, const VectorField& v);

// R as above; for u == v the second term equals grad(|u|^2) / 2. Dealiased.
VectorField r_bilinear(const VectorField& u, const VectorField& v);

// (u.grad v)_i = sum_k u_k d_k v_i, dealiased.
VectorField advect(const VectorField& u, const VectorField& v);

VectorField p_operator(const VectorField& u, const VectorField& v);

// Full time derivative P(u,u) - u.grad(u).
VectorField rhs_velocity(const VectorField& u);

// Same derivative via the momentum route: m = (1-Lap)u,
// mdot = -(u.grad m + (grad u)^T m + (div u) m), udot = (1-Lap)^{-1} mdot.
VectorField rhs_momentum(const VectorField& u);

// ||rhs_velocity - rhs_momentum||_{L2} / max(||rhs_velocity||_{L2}, 1e-14).
double formulation_consistency(const VectorField& u);

}  // namespace eplab
