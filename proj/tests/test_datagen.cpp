#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "eplab/datagen.hpp"
#include "eplab/ep_rhs.hpp"
#include "eplab/littlewood_paley.hpp"
#include "test_util.hpp"

using namespace eplab;
using eplab::test::rel_err;

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

TEST_CASE("adaptive quadrature") {
    CHECK(rel_err(adaptive_quadrature([](double x) { return std::sin(x); }, 0.0,
                                      std::numbers::pi, 1e-12),
                  2.0) < 1e-10);
    CHECK(rel_err(adaptive_quadrature([](double x) { return x * x; }, 0.0, 1.0, 1e-12),
                  1.0 / 3.0) < 1e-12);
    CHECK(rel_err(adaptive_quadrature([](double x) { return std::exp(x); }, -1.0, 1.0, 1e-12),
                  std::exp(1.0) - std::exp(-1.0)) < 1e-10);
}

TEST_CASE("bump profiles") {
    auto b = make_bumps();

    for (double x : {0.0, 0.5, -0.5, 1.0, -1.0}) CHECK(b.phi(x) == doctest::Approx(1.0));
    for (double x : {2.0, -2.0, 3.0, 5.0}) CHECK(b.phi(x) == 0.0);
    for (double x : {0.0, 1.0, 2.0, -2.0}) CHECK(b.Phi(x) == doctest::Approx(1.0));
    for (double x : {4.0, -4.0, 7.0}) CHECK(b.Phi(x) == 0.0);

    // values stay in [0,1]; the big bump is flat wherever the small one lives
    for (int i = 0; i <= 200; ++i) {
        const double x = -5.0 + 0.05 * i;
        CHECK(b.phi(x) >= 0.0);
        CHECK(b.phi(x) <= 1.0);
        CHECK(b.Phi(x) >= b.phi(x));
        CHECK(b.Phi(x) * b.phi(x) == b.phi(x));
    }

    // phi' against central differences on the transition region
    for (int i = 0; i <= 40; ++i) {
        const double x = 1.0 + 0.025 * i;
        const double h = 1e-6;
        const double fd = (b.phi(x + h) - b.phi(x - h)) / (2.0 * h);
        CHECK(std::abs(b.phi_prime(x) - fd) < 1e-6);
        CHECK(std::abs(b.phi_prime(-x) + b.phi_prime(x)) < 1e-14);  // odd
    }
    CHECK(b.phi_prime(0.3) == 0.0);
    CHECK(b.phi_prime(2.5) == 0.0);

    // ||phi||_L2: phi == 1 on [-1,1] and |phi| <= 1 on the width-4 support
    CHECK(b.phi_l2() > std::numbers::sqrt2);
    CHECK(b.phi_l2() < 2.0);
    const double direct = std::sqrt(adaptive_quadrature(
        [&](double x) { return b.phi(x) * b.phi(x); }, -2.0, 2.0, 1e-10));
    CHECK(rel_err(b.phi_l2(), direct) < 1e-8);
}

TEST_CASE("construction grid sizing") {
    const double delta = 0.25;
    for (int n : {8, 32}) {
        auto g = construction_grid(n, delta, 2);
        const double nd = std::pow(n, delta);
        CHECK(g->dim() == 2);
        CHECK(g->periods()[0] == doctest::Approx(16.0 * nd));
        CHECK(g->periods()[1] == doctest::Approx(16.0));

        // modulated packet lives inside the dealiased zone
        CHECK(g->dealias_limit(0) >= n + 10.0 * nd);
        // >= 8 samples per carrier oscillation
        const double per_osc = (two_pi / n) / g->spacing(0);
        CHECK(per_osc >= 8.0);
        CHECK(g->sizes()[0] % 2 == 0);
    }
    auto g1 = construction_grid(16, 0.25, 1);
    CHECK(g1->dim() == 1);
    auto g3 = construction_grid(8, 0.25, 3);
    CHECK(g3->dim() == 3);
    CHECK(g3->periods()[2] == doctest::Approx(16.0));
}

TEST_CASE("high-frequency field values and norms") {
    auto b = make_bumps();
    const double delta = 0.25, s = 2.6;
    const int n = 32;
    auto g = construction_grid(n, delta, 2);
    ConstructionParams p{n, delta, 1, s, 2};

    auto uh = high_freq_field(g, b, p, 0.7);
    CHECK(uh[1].l2_norm() == 0.0);

    // pointwise formula at a handful of lattice points
    const double nd = std::pow(n, delta);
    const double amp = std::pow(n, -0.5 * delta - s);
    for (long i1 : {0L, 100L, 801L}) {
        for (long i2 : {0L, 37L}) {
            const double x1 = g->coordinate(0, i1);
            const double x2 = g->coordinate(1, i2);
            const double want =
                amp * b.phi(x1 / nd) * std::sin(n * x1 - 0.7) * b.phi(x2);
            const long flat = i1 * g->sizes()[1] + i2;
            CHECK(std::abs(uh[0].physical()[flat] - want) < 1e-15 + 1e-12 * std::abs(want));
        }
    }

    // packet concentrated at |xi_1| ~ n: H^r norm ~ (1+n^2)^{r/2} n^{-s} ||phi||^2 / sqrt2
    for (double r : {0.0, 1.0, s}) {
        const double want = std::pow(1.0 + n * n, 0.5 * r) * std::pow(n, -s) *
                            b.phi_l2() * b.phi_l2() / std::numbers::sqrt2;
        CHECK(rel_err(sobolev_norm(uh, r), want) < 0.05);
    }

    // sup amplitude: the envelope peaks at 1 and the carrier is well sampled
    CHECK(rel_err(linf_norm(uh[0]), amp) < 5e-3);
}

TEST_CASE("scaling limit of the modulated-packet H^s norm") {
    // n^{-s-delta/2} ||phi(x/n^delta) sin(nx - a)||_{H^s} -> ||phi||_L2 / sqrt2,
    // sampled directly so the envelope exponent can sit at its endpoint 1/2
    auto b = make_bumps();
    const double delta = 0.5, s = 2.0, alpha = 0.3;
    const int n = 128;
    const double nd = std::pow(n, delta);
    const double L = 16.0 * nd;
    const int N = next_fast_size(static_cast<int>(std::ceil(8.0 * n * L / two_pi)));
    auto g = make_grid(std::vector<int>{N}, std::vector<double>{L});
    auto f = ScalarField::sample(g, [&](const std::vector<double>& x) {
        return std::pow(n, -s - 0.5 * delta) * b.phi(x[0] / nd) * std::sin(n * x[0] - alpha);
    });
    const double limit = b.phi_l2() / std::numbers::sqrt2;
    CHECK(rel_err(sobolev_norm(f, s), limit) < 0.05);
}

TEST_CASE("high-frequency time derivative") {
    auto b = make_bumps();
    const double delta = 0.25, s = 2.6;
    const int n = 16;
    auto g = construction_grid(n, delta, 2);

    for (int omega : {1, -1}) {
        ConstructionParams p{n, delta, omega, s, 2};
        const double t = 0.4, h = 1e-4;
        auto dt_exact = high_freq_time_derivative(g, b, p, t);
        auto fd = scale(1.0 / (2.0 * h), high_freq_field(g, b, p, t + h) -
                                             high_freq_field(g, b, p, t - h));
        CHECK((dt_exact - fd).l2_norm() / dt_exact.l2_norm() < 1e-6);
    }

    // at t = 0 the field itself is omega-independent, the derivative flips sign
    ConstructionParams pp{n, delta, 1, s, 2};
    ConstructionParams pm{n, delta, -1, s, 2};
    CHECK((high_freq_field(g, b, pp, 0.0) - high_freq_field(g, b, pm, 0.0)).l2_norm() == 0.0);
    auto dp = high_freq_time_derivative(g, b, pp, 0.0);
    auto dm = high_freq_time_derivative(g, b, pm, 0.0);
    CHECK((dp + dm).l2_norm() < 1e-14 * dp.l2_norm());
}

TEST_CASE("low-frequency initial datum") {
    auto b = make_bumps();
    const double delta = 0.25, s = 2.6;
    auto g = construction_grid(32, delta, 2);

    ConstructionParams p{32, delta, 1, s, 2};
    auto ul = low_freq_initial(g, b, p);
    CHECK(ul[1].l2_norm() == 0.0);
    CHECK(rel_err(linf_norm(ul[0]), 1.0 / 32.0) < 1e-12);  // plateau value omega/n
    // omega enters as an overall sign
    ConstructionParams pm{32, delta, -1, s, 2};
    CHECK((low_freq_initial(g, b, pm) + ul).l2_norm() == 0.0);

    // size ~ n^{-1 + delta/2} in every Sobolev index (the envelope is slow):
    // compare n = 16 vs n = 32 on the shared grid
    ConstructionParams p16{16, delta, 1, s, 2};
    auto ul16 = low_freq_initial(g, b, p16);
    for (double r : {s, s + 1.0}) {
        const double ratio = sobolev_norm(ul, r) / sobolev_norm(ul16, r);
        CHECK(rel_err(ratio, std::pow(2.0, -1.0 + 0.5 * delta)) < 0.1);
    }
}

TEST_CASE("combined initial datum") {
    auto b = make_bumps();
    const double delta = 0.25, s = 2.6;
    auto g = construction_grid(32, delta, 2);

    for (int n : {16, 32}) {
        ConstructionParams p{n, delta, 1, s, 2};
        auto u0 = combined_initial(g, b, p);
        auto parts = high_freq_field(g, b, p, 0.0) + low_freq_initial(g, b, p);
        CHECK((u0 - parts).l2_norm() == 0.0);
    }

    // the omega = +1 / -1 data converge to each other in H^s as n grows
    auto gap_at = [&](int n) {
        ConstructionParams pp{n, delta, 1, s, 2};
        ConstructionParams pm{n, delta, -1, s, 2};
        return sobolev_norm(combined_initial(g, b, pp) - combined_initial(g, b, pm), s) /
               sobolev_norm(combined_initial(g, b, pp), s);
    };
    const double g16 = gap_at(16), g32 = gap_at(32);
    CHECK(g32 < g16);
    // the difference is exactly twice the low-frequency part, which obeys the
    // n^{-1 + delta/2} law
    auto diff_at = [&](int n) {
        ConstructionParams pp{n, delta, 1, s, 2};
        ConstructionParams pm{n, delta, -1, s, 2};
        return combined_initial(g, b, pp) - combined_initial(g, b, pm);
    };
    ConstructionParams pp{32, delta, 1, s, 2};
    CHECK((diff_at(32) - scale(2.0, low_freq_initial(g, b, pp))).l2_norm() < 1e-14);
    const double ratio = sobolev_norm(diff_at(32), s) / sobolev_norm(diff_at(16), s);
    CHECK(rel_err(ratio, std::pow(2.0, -1.0 + 0.5 * delta)) < 0.05);
}

TEST_CASE("error term F") {
    auto b = make_bumps();
    const double delta = 0.25, s = 2.6;
    auto g = construction_grid(32, delta, 2);

    ConstructionParams p{32, delta, 1, s, 2};
    auto ul = low_freq_initial(g, b, p);
    auto uh = high_freq_field(g, b, p, 0.0);

    // vanishes with the fast component
    VectorField zero(g);
    CHECK(error_F(ul, zero).l2_norm() == 0.0);

    // quadratic homogeneity under joint scaling
    auto f1 = error_F(ul, uh);
    auto f2 = error_F(scale(2.0, ul), scale(2.0, uh));
    CHECK((f2 - scale(4.0, f1)).l2_norm() / f1.l2_norm() < 1e-10);

    // shrinks with n in the paper norm H^{s-1}
    ConstructionParams p8{8, delta, 1, s, 2};
    auto f_small =
        error_F(low_freq_initial(g, b, p8), high_freq_field(g, b, p8, 0.0));
    CHECK(sobolev_norm(f1, s - 1.0) < sobolev_norm(f_small, s - 1.0));
}

TEST_CASE("error term E decomposition") {
    auto b = make_bumps();
    const double delta = 0.25, s = 2.6;
    const int n = 16;
    auto g = construction_grid(n, delta, 2);
    ConstructionParams p{n, delta, 1, s, 2};
    auto ul0 = low_freq_initial(g, b, p);

    // frozen low-frequency field: e11 telescopes away at any t, and with no
    // transverse flow e13 vanishes too
    auto E = error_E(g, b, p, 0.6, ul0, ul0);
    CHECK(E.e11.l2_norm() == 0.0);
    CHECK(E.e13.l2_norm() == 0.0);
    CHECK(E.total[1].l2_norm() == 0.0);
    CHECK((E.total - (E.e11 + E.e12 + E.e13)).l2_norm() <= 1e-10 * E.total.l2_norm());
    CHECK(E.e12.l2_norm() > 0.0);

    // a transverse low-frequency component activates e13 (the piece-sum
    // identity is asserted inside error_E)
    auto ul_t = ul0;
    ul_t[1] = scale(0.3, ul0[0]);
    auto Et = error_E(g, b, p, 0.6, ul_t, ul0);
    CHECK(Et.e13.l2_norm() > 0.0);
    CHECK(Et.e11.l2_norm() == 0.0);  // first component unchanged

    // direct cross-check: total == d/dt u^h + u^l . grad u^h, assembled
    // spectrally from the field primitives (compare after truncation: the raw
    // samples carry small spectral tails beyond the retained band)
    auto direct = dealias(high_freq_time_derivative(g, b, p, 0.6) +
                          advect(ul0, high_freq_field(g, b, p, 0.6)));
    CHECK((dealias(E.total) - direct).l2_norm() / direct.l2_norm() < 1e-5);

    // a perturbed "initial datum" breaks the internal piece-sum identity
    CHECK_THROWS_AS(error_E(g, b, p, 0.6, ul0, scale(0.5, ul0)), std::logic_error);
}

TEST_CASE("spectral concentration of the fast packet") {
    auto b = make_bumps();
    const double delta = 0.25, s = 2.6;
    const int n = 32;
    auto g = construction_grid(n, delta, 2);
    ConstructionParams p{n, delta, 1, s, 2};
    auto uh = high_freq_field(g, b, p, 0.0);

    const auto& sp = uh[0].spectral();
    const long n2 = g->sizes()[1];
    const double band = 10.0 * std::pow(n, delta);
    double inside = 0.0, total = 0.0;
    for (long flat = 0; flat < g->total_points(); ++flat) {
        const double xi1 = g->frequency(0, flat / n2);
        const double mass = std::norm(sp[flat]);
        total += mass;
        if (std::abs(std::abs(xi1) - n) <= band) inside += mass;
    }
    CHECK(inside / total > 0.99);
}

TEST_CASE("parameter and support validation") {
    auto b = make_bumps();
    auto g = construction_grid(8, 0.25, 2);

    auto field_with = [&](ConstructionParams p) { return high_freq_field(g, b, p, 0.0); };
    CHECK_THROWS_AS(field_with({0, 0.25, 1, 2.6, 2}), std::invalid_argument);
    CHECK_THROWS_AS(field_with({8, 0.6, 1, 2.6, 2}), std::invalid_argument);
    CHECK_THROWS_AS(field_with({8, 0.0, 1, 2.6, 2}), std::invalid_argument);
    CHECK_THROWS_AS(field_with({8, 0.25, 2, 2.6, 2}), std::invalid_argument);
    CHECK_THROWS_AS(field_with({8, 0.25, 1, 2.6, 3}), std::invalid_argument);  // dim
    // carrier/support too large for a box sized for n_max = 8
    CHECK_THROWS_AS(field_with({512, 0.25, 1, 2.6, 2}), std::invalid_argument);

    // transverse axis narrower than the big bump's support
    auto tight = make_grid(std::vector<int>{256, 64}, std::vector<double>{40.0, 8.0});
    ConstructionParams p{8, 0.25, 1, 2.6, 2};
    CHECK_THROWS_AS(high_freq_field(tight, b, p, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(low_freq_initial(tight, b, p), std::invalid_argument);
}
