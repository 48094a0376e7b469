#include "eplab/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eplab/fft.hpp"

namespace eplab {

namespace {

template <class F>
void for_each_index(const TorusGrid& g, F&& f) {
    const int d = g.dim();
    const long total = g.total_points();
    std::vector<int> idx(d, 0);
    for (long flat = 0; flat < total; ++flat) {
        f(flat, idx);
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < g.sizes()[a]) break;
            idx[a] = 0;
        }
    }
}

}  // namespace

ScalarField::ScalarField(GridPtr grid) : grid_(std::move(grid)) {
    physical_.emplace(grid_->total_points(), 0.0);
    spectral_.emplace(grid_->total_points(), cplx(0.0, 0.0));
}

ScalarField ScalarField::from_physical(GridPtr grid, std::vector<double> values) {
    if (static_cast<long>(values.size()) != grid->total_points())
        throw std::invalid_argument("ScalarField: physical size mismatch");
    ScalarField f(std::move(grid));
    f.physical_ = std::move(values);
    f.spectral_.reset();
    return f;
}

ScalarField ScalarField::from_spectral(GridPtr grid, std::vector<cplx> modes) {
    if (static_cast<long>(modes.size()) != grid->total_points())
        throw std::invalid_argument("ScalarField: spectral size mismatch");
    ScalarField f(std::move(grid));
    f.spectral_ = std::move(modes);
    f.physical_.reset();
    return f;
}

ScalarField ScalarField::sample(GridPtr grid,
                                const std::function<double(const std::vector<double>&)>& f) {
    std::vector<double> values(grid->total_points());
    std::vector<double> x(grid->dim());
    for_each_index(*grid, [&](long flat, const std::vector<int>& idx) {
        for (int a = 0; a < grid->dim(); ++a) x[a] = grid->coordinate(a, idx[a]);
        values[flat] = f(x);
    });
    return from_physical(std::move(grid), std::move(values));
}

const std::vector<double>& ScalarField::physical() const {
    if (!physical_) physical_ = fft::inverse(*grid_, *spectral_);
    return *physical_;
}

const std::vector<cplx>& ScalarField::spectral() const {
    if (!spectral_) spectral_ = fft::forward(*grid_, *physical_);
    return *spectral_;
}

double ScalarField::l2_norm() const {
    double sq = 0.0;
    if (spectral_) {
        for (const cplx& z : *spectral_) sq += std::norm(z);
    } else {
        for (double v : *physical_) sq += v * v;
        sq *= grid_->volume_element();
    }
    return std::sqrt(sq);
}

double ScalarField::linf_norm() const {
    double m = 0.0;
    for (double v : physical()) m = std::max(m, std::abs(v));
    return m;
}

double ScalarField::hermitian_defect() const {
    const auto& s = spectral();
    const auto& g = *grid_;
    const int d = g.dim();
    double peak = 0.0;
    for (const cplx& z : s) peak = std::max(peak, std::abs(z));
    if (peak == 0.0) return 0.0;
    double worst = 0.0;
    for_each_index(g, [&](long flat, const std::vector<int>& idx) {
        long mirror = 0;
        for (int a = 0; a < d; ++a)
            mirror += static_cast<long>((g.sizes()[a] - idx[a]) % g.sizes()[a]) * g.stride(a);
        worst = std::max(worst, std::abs(s[mirror] - std::conj(s[flat])));
    });
    return worst / peak;
}

VectorField::VectorField(GridPtr grid, int d) {
    if (d < 0) d = grid->dim();
    comp.reserve(d);
    for (int i = 0; i < d; ++i) comp.emplace_back(grid);
}

VectorField::VectorField(std::vector<ScalarField> components) : comp(std::move(components)) {
    for (const auto& c : comp)
        if (!c.grid()->same_as(*comp.front().grid()))
            throw std::invalid_argument("VectorField: components on different grids");
}

double VectorField::l2_norm() const {
    double sq = 0.0;
    for (const auto& c : comp) {
        const double n = c.l2_norm();
        sq += n * n;
    }
    return std::sqrt(sq);
}

double VectorField::linf_norm() const {
    double m = 0.0;
    for (const auto& c : comp) m = std::max(m, c.linf_norm());
    return m;
}

MatrixField::MatrixField(GridPtr grid, int dim) : d(dim) {
    entries.reserve(static_cast<size_t>(d) * d);
    for (int i = 0; i < d * d; ++i) entries.emplace_back(grid);
}

ScalarField derivative(const ScalarField& f, int axis) {
    const auto& g = *f.grid();
    if (axis < 0 || axis >= g.dim()) throw std::out_of_range("derivative: axis out of range");
    std::vector<cplx> out(f.spectral());
    for_each_index(g, [&](long flat, const std::vector<int>& idx) {
        if (g.is_nyquist(axis, idx[axis]))
            out[flat] = 0.0;
        else
            out[flat] *= cplx(0.0, g.frequency(axis, idx[axis]));
    });
    return ScalarField::from_spectral(f.grid(), std::move(out));
}

JacobianField gradient(const VectorField& u) {
    const int d = u.dim();
    JacobianField J(u.grid(), d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) J(i, j) = derivative(u[j], i);
    return J;
}

ScalarField divergence(const VectorField& u) {
    ScalarField div = derivative(u[0], 0);
    for (int i = 1; i < u.dim(); ++i) div = div + derivative(u[i], i);
    return div;
}

namespace {

template <class M>
ScalarField apply_multiplier(const ScalarField& f, M&& m) {
    const auto& fsq = f.grid()->freq_sq();
    std::vector<cplx> out(f.spectral());
    for (size_t i = 0; i < out.size(); ++i) out[i] *= m(fsq[i]);
    return ScalarField::from_spectral(f.grid(), std::move(out));
}

}  // namespace

ScalarField helmholtz_inverse(const ScalarField& f) {
    return apply_multiplier(f, [](double sq) { return 1.0 / (1.0 + sq); });
}

ScalarField helmholtz(const ScalarField& f) {
    return apply_multiplier(f, [](double sq) { return 1.0 + sq; });
}

VectorField helmholtz_inverse(const VectorField& u) {
    std::vector<ScalarField> out;
    out.reserve(u.dim());
    for (const auto& c : u.comp) out.push_back(helmholtz_inverse(c));
    return VectorField(std::move(out));
}

VectorField helmholtz(const VectorField& u) {
    std::vector<ScalarField> out;
    out.reserve(u.dim());
    for (const auto& c : u.comp) out.push_back(helmholtz(c));
    return VectorField(std::move(out));
}

ScalarField dealias(const ScalarField& f) {
    const auto& mask = f.grid()->dealias_mask();
    std::vector<cplx> out(f.spectral());
    for (size_t i = 0; i < out.size(); ++i)
        if (!mask[i]) out[i] = 0.0;
    return ScalarField::from_spectral(f.grid(), std::move(out));
}

VectorField dealias(const VectorField& u) {
    std::vector<ScalarField> out;
    out.reserve(u.dim());
    for (const auto& c : u.comp) out.push_back(dealias(c));
    return VectorField(std::move(out));
}

ScalarField pointwise_product(const ScalarField& f, const ScalarField& g) {
    require_same_grid(f, g);
    const auto& a = f.physical();
    const auto& b = g.physical();
    std::vector<double> prod(a.size());
    for (size_t i = 0; i < a.size(); ++i) prod[i] = a[i] * b[i];
    return dealias(ScalarField::from_physical(f.grid(), std::move(prod)));
}

ScalarField lincomb(double a, const ScalarField& f, double b, const ScalarField& g) {
    require_same_grid(f, g);
    if (f.has_spectral() && g.has_spectral()) {
        const auto& x = f.spectral();
        const auto& y = g.spectral();
        std::vector<cplx> out(x.size());
        for (size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
        return ScalarField::from_spectral(f.grid(), std::move(out));
    }
    const auto& x = f.physical();
    const auto& y = g.physical();
    std::vector<double> out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
    return ScalarField::from_physical(f.grid(), std::move(out));
}

VectorField lincomb(double a, const VectorField& u, double b, const VectorField& v) {
    require_same_grid(u, v);
    std::vector<ScalarField> out;
    out.reserve(u.dim());
    for (int i = 0; i < u.dim(); ++i) out.push_back(lincomb(a, u[i], b, v[i]));
    return VectorField(std::move(out));
}

ScalarField scale(double a, const ScalarField& f) {
    if (f.has_spectral()) {
        std::vector<cplx> out(f.spectral());
        for (auto& z : out) z *= a;
        return ScalarField::from_spectral(f.grid(), std::move(out));
    }
    std::vector<double> out(f.physical());
    for (auto& v : out) v *= a;
    return ScalarField::from_physical(f.grid(), std::move(out));
}

VectorField scale(double a, const VectorField& u) {
    std::vector<ScalarField> out;
    out.reserve(u.dim());
    for (const auto& c : u.comp) out.push_back(scale(a, c));
    return VectorField(std::move(out));
}

bool all_finite(const VectorField& u) {
    for (const auto& c : u.comp) {
        if (c.has_physical()) {
            for (double x : c.physical())
                if (!std::isfinite(x)) return false;
        } else {
            for (const cplx& z : c.spectral())
                if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
    }
    return true;
}

void require_same_grid(const ScalarField& f, const ScalarField& g) {
    if (!f.grid()->same_as(*g.grid()))
        throw std::invalid_argument("fields live on different grids");
}

void require_same_grid(const VectorField& u, const VectorField& v) {
    if (!u.grid()->same_as(*v.grid()) || u.dim() != v.dim())
        throw std::invalid_argument("vector fields incompatible");
}

}  // namespace eplab
