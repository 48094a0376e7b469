#include "eplab/datagen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "eplab/ep_rhs.hpp"
#include "eplab/smooth_step.hpp"

namespace eplab {

namespace {

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double m, double b,
                     double fa, double fm, double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_step(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double rel_tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson(a, b, fa, fm, fb);
    const double scale = std::max(std::abs(whole), 1e-30);
    return adaptive_step(f, a, m, b, fa, fm, fb, whole, rel_tol * scale, 48);
}

BumpPair::BumpPair() {
    const auto phi_sq = [this](double x) {
        const double v = phi(x);
        return v * v;
    };
    phi_l2_ = std::sqrt(adaptive_quadrature(phi_sq, -2.0, 2.0, 1e-12));
}

double BumpPair::phi(double x) const { return 1.0 - smooth_step(std::abs(x) - 1.0); }

double BumpPair::phi_prime(double x) const {
    const double sign = x >= 0.0 ? 1.0 : -1.0;
    return -sign * smooth_step_prime(std::abs(x) - 1.0);
}

double BumpPair::Phi(double x) const { return 1.0 - smooth_step(0.5 * (std::abs(x) - 2.0)); }

BumpPair make_bumps() { return BumpPair(); }

namespace {

void validate(const ConstructionParams& p, const TorusGrid& grid) {
    if (p.n < 1) throw std::invalid_argument("construction: n must be a positive integer");
    if (!(p.delta > 0.0 && p.delta < 0.5))
        throw std::invalid_argument("construction: delta must lie in (0, 1/2)");
    if (p.omega != 1 && p.omega != -1)
        throw std::invalid_argument("construction: omega must be +1 or -1");
    if (grid.dim() != p.dim)
        throw std::invalid_argument("construction: grid dimension mismatch");

    const double halfwidth = 4.0 * std::pow(p.n, p.delta);  // supp Phi(x1/n^delta)
    const double needed = 4.0 * halfwidth;                  // 25% padding per side
    if (grid.periods()[0] < needed - 1e-9)
        throw std::invalid_argument(
            "construction: axis-1 period " + std::to_string(grid.periods()[0]) +
            " too small for n = " + std::to_string(p.n) + ", need >= 16 n^delta = " +
            std::to_string(needed));
    for (int a = 1; a < grid.dim(); ++a)
        if (grid.periods()[a] < 16.0 - 1e-9)
            throw std::invalid_argument("construction: transverse period must be >= 16");
    if (p.n > grid.dealias_limit(0) + 1e-9)
        throw std::invalid_argument("construction: carrier frequency n = " +
                                    std::to_string(p.n) + " outside the dealiased zone");
}

}  // namespace

GridPtr construction_grid(int n_max, double delta, int dim) {
    const double nd = std::pow(n_max, delta);
    const double L1 = 16.0 * nd;
    const double xi_cover = n_max + 10.0 * nd;
    const double two_pi = 2.0 * std::numbers::pi;
    // retained band is |k| <= floor(N/3), so round the dealias requirement up
    // to a full multiple of 3
    const int n_dealias = 3 * (static_cast<int>(std::ceil(xi_cover * L1 / two_pi)) + 1);
    const int n_osc = static_cast<int>(std::ceil(8.0 * n_max * L1 / two_pi));
    const int N1 = next_fast_size(std::max(n_dealias, n_osc));

    std::vector<int> sizes{N1};
    std::vector<double> periods{L1};
    const double Lt = 16.0;
    const int Nt =
        next_fast_size(3 * (static_cast<int>(std::ceil(16.0 * Lt / two_pi)) + 1));
    for (int a = 1; a < dim; ++a) {
        sizes.push_back(Nt);
        periods.push_back(Lt);
    }
    return make_grid(std::move(sizes), std::move(periods));
}

namespace {

// Samples amp * env(x1/n^delta) * trig(n x1 - omega t) * tail(x2)...tail(xd)
// into component 0 of a fresh vector field.
template <class Env, class Trig, class Tail>
VectorField modulated_profile(const GridPtr& grid, const ConstructionParams& p, double amp,
                              Env&& env, Trig&& trig, Tail&& tail, double t) {
    const double nd = std::pow(p.n, p.delta);
    ScalarField first = ScalarField::sample(grid, [&](const std::vector<double>& x) {
        double v = amp * env(x[0] / nd) * trig(p.n * x[0] - p.omega * t);
        for (size_t i = 1; i < x.size(); ++i) v *= tail(x[i]);
        return v;
    });
    VectorField u(grid, p.dim);
    u[0] = std::move(first);
    return u;
}

}  // namespace

VectorField high_freq_field(const GridPtr& grid, const BumpPair& bumps,
                            const ConstructionParams& p, double t) {
    validate(p, *grid);
    const double amp = std::pow(p.n, -0.5 * p.delta - p.s);
    return modulated_profile(
        grid, p, amp, [&](double y) { return bumps.phi(y); },
        [](double a) { return std::sin(a); }, [&](double y) { return bumps.phi(y); }, t);
}

VectorField high_freq_time_derivative(const GridPtr& grid, const BumpPair& bumps,
                                      const ConstructionParams& p, double t) {
    validate(p, *grid);
    const double amp = -p.omega * std::pow(p.n, -0.5 * p.delta - p.s);
    return modulated_profile(
        grid, p, amp, [&](double y) { return bumps.phi(y); },
        [](double a) { return std::cos(a); }, [&](double y) { return bumps.phi(y); }, t);
}

VectorField low_freq_initial(const GridPtr& grid, const BumpPair& bumps,
                             const ConstructionParams& p) {
    validate(p, *grid);
    const double nd = std::pow(p.n, p.delta);
    const double amp = p.omega / static_cast<double>(p.n);
    ScalarField first = ScalarField::sample(grid, [&](const std::vector<double>& x) {
        double v = amp * bumps.Phi(x[0] / nd);
        for (size_t i = 1; i < x.size(); ++i) v *= bumps.Phi(x[i]);
        return v;
    });
    VectorField u(grid, p.dim);
    u[0] = std::move(first);
    return u;
}

VectorField combined_initial(const GridPtr& grid, const BumpPair& bumps,
                             const ConstructionParams& p) {
    return high_freq_field(grid, bumps, p, 0.0) + low_freq_initial(grid, bumps, p);
}

VectorField error_F(const VectorField& u_l, const VectorField& u_h) {
    require_same_grid(u_l, u_h);
    VectorField F = advect(u_h, u_h) + advect(u_h, u_l);
    F = F - p_operator(u_l, u_h);
    F = F - p_operator(u_h, u_l);
    F = F - p_operator(u_h, u_h);
    return F;
}

ErrorEDecomposition error_E(const GridPtr& grid, const BumpPair& bumps,
                            const ConstructionParams& p, double t,
                            const VectorField& u_l_t, const VectorField& u_l_0) {
    validate(p, *grid);
    require_same_grid(u_l_t, u_l_0);
    if (!u_l_t.grid()->same_as(*grid))
        throw std::invalid_argument("error_E: low-frequency fields on a different grid");

    const int d = p.dim;
    const long total = grid->total_points();
    const double nd = std::pow(p.n, p.delta);

    // analytic profiles sampled on the grid (component-1 factors only)
    std::vector<double> mod_cos(total), mod_sin_dphi(total);
    std::vector<std::vector<double>> trans_sin(d > 1 ? d - 1 : 0,
                                               std::vector<double>(total));
    {
        std::vector<double> x(d);
        std::vector<int> idx(d, 0);
        for (long flat = 0; flat < total; ++flat) {
            for (int a = 0; a < d; ++a) x[a] = grid->coordinate(a, idx[a]);
            const double phase = p.n * x[0] - p.omega * t;
            double tail = 1.0;
            for (int a = 1; a < d; ++a) tail *= bumps.phi(x[a]);
            mod_cos[flat] = bumps.phi(x[0] / nd) * std::cos(phase) * tail;
            mod_sin_dphi[flat] = bumps.phi_prime(x[0] / nd) * std::sin(phase) * tail;
            for (int a = 1; a < d; ++a) {
                // d/dx_a of the transverse product, times the axis-1 factors
                double dtail = bumps.phi_prime(x[a]);
                for (int b = 1; b < d; ++b)
                    if (b != a) dtail *= bumps.phi(x[b]);
                trans_sin[a - 1][flat] = bumps.phi(x[0] / nd) * std::sin(phase) * dtail;
            }
            for (int a = d - 1; a >= 0; --a) {
                if (++idx[a] < grid->sizes()[a]) break;
                idx[a] = 0;
            }
        }
    }

    const double c11 = std::pow(p.n, 1.0 - p.s - 0.5 * p.delta);
    const double c12 = std::pow(p.n, -p.s - 1.5 * p.delta);
    const double c13 = std::pow(p.n, -0.5 * p.delta - p.s);
    const double* ul1_t = u_l_t[0].physical().data();
    const double* ul1_0 = u_l_0[0].physical().data();

    std::vector<double> v11(total), v12(total), v13(total, 0.0), vtot(total);
    for (long i = 0; i < total; ++i) {
        v11[i] = c11 * (ul1_t[i] - ul1_0[i]) * mod_cos[i];
        v12[i] = c12 * ul1_t[i] * mod_sin_dphi[i];
    }
    for (int a = 1; a < d; ++a) {
        const double* ula = u_l_t[a].physical().data();
        const double* prof = trans_sin[a - 1].data();
        for (long i = 0; i < total; ++i) v13[i] += c13 * ula[i] * prof[i];
    }
    // total = d/dt u^h + u^l . grad u^h, from the same analytic samples
    const double cdt = -p.omega * c13;  // n^{-delta/2-s} with the -omega sign
    for (long i = 0; i < total; ++i)
        vtot[i] = cdt * mod_cos[i] + c11 * ul1_t[i] * mod_cos[i] + v12[i] + v13[i];

    double worst = 0.0, scale = 0.0;
    for (long i = 0; i < total; ++i) {
        worst = std::max(worst, std::abs(vtot[i] - (v11[i] + v12[i] + v13[i])));
        scale = std::max(scale, std::abs(vtot[i]));
    }
    if (worst > 1e-10 * std::max(scale, 1e-30))
        throw std::logic_error("error_E: piece sum does not reproduce the total");

    auto wrap = [&](std::vector<double> vals) {
        VectorField f(grid, d);
        f[0] = ScalarField::from_physical(grid, std::move(vals));
        return f;
    };
    ErrorEDecomposition out{wrap(std::move(vtot)), wrap(std::move(v11)),
                            wrap(std::move(v12)), wrap(std::move(v13))};
    return out;
}

}  // namespace eplab
