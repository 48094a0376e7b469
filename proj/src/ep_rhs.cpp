#include "eplab/ep_rhs.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace eplab {

namespace {

// raw physical views of all Jacobian entries, row-major (i, j)
std::vector<const double*> raw(const MatrixField& J) {
    std::vector<const double*> p(J.entries.size());
    for (size_t e = 0; e < J.entries.size(); ++e) p[e] = J.entries[e].physical().data();
    return p;
}

std::vector<const double*> raw(const VectorField& u) {
    std::vector<const double*> p(u.comp.size());
    for (size_t i = 0; i < p.size(); ++i) p[i] = u.comp[i].physical().data();
    return p;
}

}  // namespace

MatrixField q_bilinear(const VectorField& u, const VectorField& v) {
    require_same_grid(u, v);
    const int d = u.dim();
    const long total = u.grid()->total_points();

    const JacobianField gu = gradient(u);
    const JacobianField gv = gradient(v);
    const ScalarField div_u = divergence(u);
    const auto GU = raw(gu);
    const auto GV = raw(gv);
    const double* DU = div_u.physical().data();

    std::vector<double> trace(total, 0.0);
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
            const double* a = GU[k * d + l];
            const double* b = GV[k * d + l];
            for (long p = 0; p < total; ++p) trace[p] += a[p] * b[p];
        }

    MatrixField Q(u.grid(), d);
    std::vector<double> entry(total);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            std::fill(entry.begin(), entry.end(), 0.0);
            for (int k = 0; k < d; ++k) {
                const double* uik = GU[i * d + k];
                const double* uki = GU[k * d + i];
                const double* vkj = GV[k * d + j];
                const double* vjk = GV[j * d + k];
                for (long p = 0; p < total; ++p)
                    entry[p] += (uik[p] + uki[p]) * vkj[p] - uik[p] * vjk[p];
            }
            const double* vij = GV[i * d + j];
            if (i == j) {
                for (long p = 0; p < total; ++p)
                    entry[p] += 0.5 * trace[p] - DU[p] * vij[p];
            } else {
                for (long p = 0; p < total; ++p) entry[p] -= DU[p] * vij[p];
            }
            Q(i, j) = dealias(ScalarField::from_physical(u.grid(), entry));
        }
    return Q;
}

VectorField advect(const VectorField& u, const VectorField& v) {
    require_same_grid(u, v);
    const int d = u.dim();
    const long total = u.grid()->total_points();
    const JacobianField gv = gradient(v);
    const auto GV = raw(gv);
    const auto U = raw(u);

    std::vector<ScalarField> out;
    out.reserve(d);
    std::vector<double> comp(total);
    for (int i = 0; i < d; ++i) {
        std::fill(comp.begin(), comp.end(), 0.0);
        for (int k = 0; k < d; ++k) {
            const double* uk = U[k];
            const double* dki = GV[k * d + i];
            for (long p = 0; p < total; ++p) comp[p] += uk[p] * dki[p];
        }
        out.push_back(dealias(ScalarField::from_physical(u.grid(), comp)));
    }
    return VectorField(std::move(out));
}

VectorField r_bilinear(const VectorField& u, const VectorField& v) {
    require_same_grid(u, v);
    const int d = u.dim();
    const long total = u.grid()->total_points();
    const ScalarField div_u = divergence(u);
    const double* DU = div_u.physical().data();
    const JacobianField gv = gradient(v);
    const auto GV = raw(gv);
    const auto U = raw(u);

    std::vector<ScalarField> out;
    out.reserve(d);
    std::vector<double> comp(total);
    for (int i = 0; i < d; ++i) {
        // (div u) v_i + sum_k u_k d_i v_k  (gradient-type contraction: for
        // u == v the second term is the exact derivative of |u|^2 / 2, which
        // is what the momentum form produces)
        const double* vi = v[i].physical().data();
        for (long p = 0; p < total; ++p) comp[p] = DU[p] * vi[p];
        for (int k = 0; k < d; ++k) {
            const double* uk = U[k];
            const double* vik = GV[i * d + k];
            for (long p = 0; p < total; ++p) comp[p] += uk[p] * vik[p];
        }
        out.push_back(dealias(ScalarField::from_physical(u.grid(), comp)));
    }
    return VectorField(std::move(out));
}

VectorField p_operator(const VectorField& u, const VectorField& v) {
    const int d = u.dim();
    const MatrixField Q = q_bilinear(u, v);
    const VectorField R = r_bilinear(u, v);

    std::vector<ScalarField> out;
    out.reserve(d);
    for (int j = 0; j < d; ++j) {
        ScalarField div_q = derivative(Q(0, j), 0);
        for (int i = 1; i < d; ++i) div_q = div_q + derivative(Q(i, j), i);
        out.push_back(scale(-1.0, helmholtz_inverse(div_q + R[j])));
    }
    return VectorField(std::move(out));
}

VectorField rhs_velocity(const VectorField& u) {
    return p_operator(u, u) - advect(u, u);
}

VectorField rhs_momentum(const VectorField& u) {
    const int d = u.dim();
    const long total = u.grid()->total_points();
    const VectorField m = helmholtz(u);
    const JacobianField gu = gradient(u);
    const ScalarField div_u = divergence(u);

    const VectorField transport = advect(u, m);  // (u.grad m)_i
    const auto GU = raw(gu);
    const auto M = raw(m);
    const double* DU = div_u.physical().data();

    std::vector<ScalarField> mdot;
    mdot.reserve(d);
    std::vector<double> comp(total);
    for (int i = 0; i < d; ++i) {
        // ((grad u)^T m)_i + (div u) m_i
        std::fill(comp.begin(), comp.end(), 0.0);
        for (int k = 0; k < d; ++k) {
            const double* uik = GU[i * d + k];
            const double* mk = M[k];
            for (long p = 0; p < total; ++p) comp[p] += uik[p] * mk[p];
        }
        const double* mi = M[i];
        for (long p = 0; p < total; ++p) comp[p] += DU[p] * mi[p];
        ScalarField stretch = dealias(ScalarField::from_physical(u.grid(), comp));
        mdot.push_back(scale(-1.0, transport[i] + stretch));
    }
    return helmholtz_inverse(VectorField(std::move(mdot)));
}

double formulation_consistency(const VectorField& u) {
    const VectorField a = rhs_velocity(u);
    const VectorField b = rhs_momentum(u);
    return (a - b).l2_norm() / std::max(a.l2_norm(), 1e-14);
}

}  // namespace eplab
