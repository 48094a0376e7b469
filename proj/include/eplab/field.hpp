#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "eplab/grid.hpp"

namespace eplab {

using cplx = std::complex<double>;

// A real scalar field on a TorusGrid, carried in physical and/or spectral
// representation. Either representation is materialized lazily; both are
// kept once computed. Value semantics; all operations on fields are pure.
class ScalarField {
public:
    explicit ScalarField(GridPtr grid);  // zero field
    static ScalarField from_physical(GridPtr grid, std::vector<double> values);
    static ScalarField from_spectral(GridPtr grid, std::vector<cplx> modes);

    // Sample an analytic function f(x) at the grid points; x has grid->dim()
    // entries.
    static ScalarField sample(GridPtr grid,
                              const std::function<double(const std::vector<double>&)>& f);

    const GridPtr& grid() const { return grid_; }
    const std::vector<double>& physical() const;
    const std::vector<cplx>& spectral() const;
    bool has_physical() const { return physical_.has_value(); }
    bool has_spectral() const { return spectral_.has_value(); }

    double l2_norm() const;
    double linf_norm() const;
    // Max relative deviation from Hermitian symmetry of the spectral data.
    double hermitian_defect() const;

private:
    GridPtr grid_;
    mutable std::optional<std::vector<double>> physical_;
    mutable std::optional<std::vector<cplx>> spectral_;
};

struct VectorField {
    std::vector<ScalarField> comp;

    explicit VectorField(GridPtr grid, int d = -1);  // zero; d defaults to grid dim
    explicit VectorField(std::vector<ScalarField> components);

    const GridPtr& grid() const { return comp.front().grid(); }
    int dim() const { return static_cast<int>(comp.size()); }
    ScalarField& operator[](int i) { return comp[i]; }
    const ScalarField& operator[](int i) const { return comp[i]; }

    double l2_norm() const;
    double linf_norm() const;
};

// d x d array of scalar fields; entry(i, j) is row i, column j.
// Holds both Jacobians (entry(i,j) = d_i u_j) and the bilinear form Q.
struct MatrixField {
    int d = 0;
    std::vector<ScalarField> entries;

    MatrixField(GridPtr grid, int dim);
    ScalarField& operator()(int i, int j) { return entries[i * d + j]; }
    const ScalarField& operator()(int i, int j) const { return entries[i * d + j]; }
    const GridPtr& grid() const { return entries.front().grid(); }
};

using JacobianField = MatrixField;

// ---- spectral operators -------------------------------------------------

// d/dx_axis via the multiplier i*xi; the Nyquist mode of the result is zeroed.
ScalarField derivative(const ScalarField& f, int axis);

// entry (i, j) = derivative(u_j, axis i)
JacobianField gradient(const VectorField& u);
ScalarField divergence(const VectorField& u);

// (1 - Laplacian)^{-1}: multiplier 1/(1 + |xi|^2).
ScalarField helmholtz_inverse(const ScalarField& f);
VectorField helmholtz_inverse(const VectorField& u);
// (1 - Laplacian): multiplier 1 + |xi|^2.
ScalarField helmholtz(const ScalarField& f);
VectorField helmholtz(const VectorField& u);

// 2/3 rule: zero all modes with |k_axis| > N_axis/3 on any axis.
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& u);

// Physical-space multiplication followed by dealias.
ScalarField pointwise_product(const ScalarField& f, const ScalarField& g);

// Linear combinations (spectral when both operands have spectral data,
// physical otherwise; the surviving representation is exact either way).
ScalarField lincomb(double a, const ScalarField& f, double b, const ScalarField& g);
VectorField lincomb(double a, const VectorField& u, double b, const VectorField& v);
ScalarField scale(double a, const ScalarField& f);
VectorField scale(double a, const VectorField& u);

inline ScalarField operator+(const ScalarField& f, const ScalarField& g) {
    return lincomb(1.0, f, 1.0, g);
}
inline ScalarField operator-(const ScalarField& f, const ScalarField& g) {
    return lincomb(1.0, f, -1.0, g);
}
inline VectorField operator+(const VectorField& u, const VectorField& v) {
    return lincomb(1.0, u, 1.0, v);
}
inline VectorField operator-(const VectorField& u, const VectorField& v) {
    return lincomb(1.0, u, -1.0, v);
}

bool all_finite(const VectorField& u);
void require_same_grid(const ScalarField& f, const ScalarField& g);
void require_same_grid(const VectorField& u, const VectorField& v);

}  // namespace eplab
