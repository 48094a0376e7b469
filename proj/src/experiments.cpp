#include "eplab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <numbers>
#include <stdexcept>
#include <string>

#include "eplab/ep_rhs.hpp"
#include "eplab/littlewood_paley.hpp"
#include "eplab/random_field.hpp"

namespace eplab {

namespace {

int worker_count() {
    const char* env = std::getenv("EP_LAB_WORKERS");
    if (!env) return 1;
    const int w = std::atoi(env);
    return w > 1 ? w : 1;
}

// Parallel map over [0, count) with deterministic slot assignment; falls back
// to a plain loop when a single worker is requested.
template <class Fn>
void indexed_map(int count, Fn&& fn) {
    const int workers = std::min(worker_count(), count > 0 ? count : 1);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::future<void>> futs;
    futs.reserve(workers);
    for (int w = 0; w < workers; ++w)
        futs.push_back(std::async(std::launch::async, [&, w] {
            for (int i = w; i < count; i += workers) fn(i);
        }));
    for (auto& f : futs) f.get();
}

// 1-D lattice for the packet-norm scan. Unlike the construction box this one
// admits the endpoint exponent 1/2, since no PDE is solved on it.
GridPtr lemma_grid(int n_max, double delta) {
    const double two_pi = 2.0 * std::numbers::pi;
    const double nd = std::pow(n_max, delta);
    const double L = 16.0 * nd;
    const int n_dealias = 3 * (static_cast<int>(std::ceil((n_max + 10.0 * nd) * L / two_pi)) + 1);
    const int n_osc = static_cast<int>(std::ceil(8.0 * n_max * L / two_pi));
    const int N = next_fast_size(std::max(n_dealias, n_osc));
    return make_grid(std::vector<int>{N}, std::vector<double>{L});
}

ConstructionParams params_for(const ExperimentConfig& cfg, int n, int omega) {
    ConstructionParams p;
    p.n = n;
    p.delta = cfg.delta;
    p.omega = omega;
    p.s = cfg.s;
    p.dim = cfg.dim;
    return p;
}

StepPolicy policy_for(const ExperimentConfig& cfg) {
    return StepPolicy::cfl(cfg.cfl_safety, cfg.max_steps);
}

Trajectory solve_or_throw(const VectorField& u0, double T, const ExperimentConfig& cfg,
                          std::vector<double> samples, const std::string& label) {
    auto res = solve(u0, T, policy_for(cfg), std::move(samples), {});
    if (!res.completed) {
        const double tb = res.blowup_time.value_or(T);
        throw std::runtime_error("experiment " + label + ": solver blew up at t = " +
                                 std::to_string(tb));
    }
    return std::move(res.trajectory);
}

}  // namespace

RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
    std::vector<std::pair<double, double>> usable;
    for (const auto& [n, v] : points)
        if (n > 0.0 && v > 0.0) usable.emplace_back(n, v);
    if (usable.size() < 3)
        throw std::invalid_argument("fit_rate: need at least 3 positive sample points");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [n, v] : usable) {
        const double x = std::log(n), y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(usable.size());
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_rate: degenerate abscissae");

    RateFit fit;
    fit.slope = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / m;
    fit.points = points;

    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / m;
    for (const auto& [n, v] : usable) {
        const double y = std::log(v);
        const double yhat = fit.intercept + fit.slope * std::log(n);
        ss_res += (y - yhat) * (y - yhat);
        ss_tot += (y - mean_y) * (y - mean_y);
    }
    fit.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
    return fit;
}

Lemma3Result lemma3_scan(const BumpPair& bumps, double s, double delta, double alpha,
                         const std::vector<int>& n_list, bool use_cos) {
    if (n_list.empty()) throw std::invalid_argument("lemma3_scan: empty n list");
    if (!(delta > 0.0 && delta <= 0.5))
        throw std::invalid_argument("lemma3_scan: delta must lie in (0, 1/2]");
    const int n_max = *std::max_element(n_list.begin(), n_list.end());
    auto g = lemma_grid(n_max, delta);

    Lemma3Result out;
    out.limit = bumps.phi_l2() / std::numbers::sqrt2;
    std::vector<std::pair<double, double>> dev_points;
    for (int n : n_list) {
        if (n < 1) throw std::invalid_argument("lemma3_scan: n must be positive");
        const double nd = std::pow(n, delta);
        const double amp = std::pow(n, -0.5 * delta - s);
        auto f = ScalarField::sample(g, [&](const std::vector<double>& x) {
            const double carrier = n * x[0] - alpha;
            return amp * bumps.phi(x[0] / nd) *
                   (use_cos ? std::cos(carrier) : std::sin(carrier));
        });
        const double v = sobolev_norm(f, s);
        const double dev = std::abs(v - out.limit) / out.limit;
        out.rows.push_back({n, v, dev});
        dev_points.emplace_back(n, dev);
    }
    if (dev_points.size() >= 3) out.deviation_fit = fit_rate(dev_points);
    return out;
}

DecayResult decay_scan(const ExperimentConfig& cfg) {
    if (cfg.n_list.size() < 4)
        throw std::invalid_argument("decay_scan: need at least 4 carrier frequencies");
    const double t = cfg.decay_time;
    auto bumps = make_bumps();

    DecayResult out;
    out.t = t;
    out.rows.resize(cfg.n_list.size());
    indexed_map(static_cast<int>(cfg.n_list.size()), [&](int idx) {
        const int n = cfg.n_list[idx];
        auto g = construction_grid(n, cfg.delta, cfg.dim);
        auto p = params_for(cfg, n, 1);
        auto ul0 = low_freq_initial(g, bumps, p);
        auto traj = solve_or_throw(ul0, t, cfg, {t}, "decay n=" + std::to_string(n));
        const VectorField& ul_t = traj.snapshots.back();

        auto E = error_E(g, bumps, p, t, ul_t, ul0);
        auto F = error_F(ul_t, high_freq_field(g, bumps, p, t));
        const double sm1 = cfg.s - 1.0;
        out.rows[idx] = {n,
                         sobolev_norm(E.total, sm1),
                         sobolev_norm(E.e11, sm1),
                         sobolev_norm(E.e12, sm1),
                         sobolev_norm(E.e13, sm1),
                         sobolev_norm(F, sm1)};
    });

    auto collect = [&](auto member) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& r : out.rows) pts.emplace_back(r.n, r.*member);
        return fit_rate(pts);
    };
    out.fit_E = collect(&DecayRow::norm_E);
    out.fit_E11 = collect(&DecayRow::norm_E11);
    out.fit_E12 = collect(&DecayRow::norm_E12);
    out.fit_E13 = collect(&DecayRow::norm_E13);
    out.fit_F = collect(&DecayRow::norm_F);
    return out;
}

StabilityResult stability_scan(const ExperimentConfig& cfg) {
    if (cfg.n_list.size() < 3)
        throw std::invalid_argument("stability_scan: need at least 3 carrier frequencies");
    auto bumps = make_bumps();

    StabilityResult out;
    out.rows.resize(cfg.n_list.size());
    indexed_map(static_cast<int>(cfg.n_list.size()), [&](int idx) {
        const int n = cfg.n_list[idx];
        auto g = construction_grid(n, cfg.delta, cfg.dim);
        auto p = params_for(cfg, n, 1);
        auto ul0 = dealias(low_freq_initial(g, bumps, p));
        auto traj = solve_or_throw(ul0, cfg.T, cfg, cfg.sample_times,
                                   "stability n=" + std::to_string(n));
        double sup = 0.0;
        for (const auto& snap : traj.snapshots)
            sup = std::max(sup, sobolev_norm(snap - ul0, cfg.s));
        out.rows[idx] = {n, sup};
    });

    std::vector<std::pair<double, double>> pts;
    for (const auto& r : out.rows) pts.emplace_back(r.n, r.sup_deviation);
    out.fit = fit_rate(pts);
    return out;
}

GapScan gap_experiment(const ExperimentConfig& cfg) {
    if (cfg.n_list.empty()) throw std::invalid_argument("gap_experiment: empty n list");
    auto bumps = make_bumps();

    GapScan out;
    out.reports.resize(cfg.n_list.size());
    indexed_map(static_cast<int>(cfg.n_list.size()), [&](int idx) {
        const int n = cfg.n_list[idx];
        auto g = construction_grid(n, cfg.delta, cfg.dim);
        auto pp = params_for(cfg, n, 1);
        auto pm = params_for(cfg, n, -1);

        auto u0p = combined_initial(g, bumps, pp);
        auto u0m = combined_initial(g, bumps, pm);
        const std::string label = "gap n=" + std::to_string(n);
        auto traj_p = solve_or_throw(u0p, cfg.T, cfg, cfg.sample_times, label + " omega=+1");
        auto traj_m = solve_or_throw(u0m, cfg.T, cfg, cfg.sample_times, label + " omega=-1");
        auto low_p = solve_or_throw(dealias(low_freq_initial(g, bumps, pp)), cfg.T, cfg,
                                    cfg.sample_times, label + " low omega=+1");
        auto low_m = solve_or_throw(dealias(low_freq_initial(g, bumps, pm)), cfg.T, cfg,
                                    cfg.sample_times, label + " low omega=-1");

        GapReport rep;
        rep.n = n;
        rep.times = traj_p.times;
        const double nd2 = 0.5 * cfg.delta;
        rep.epsilon_n = std::pow(n, -0.5 + nd2);
        rep.epsilon_prime_n = rep.epsilon_n + std::pow(n, nd2 - 1.0);
        rep.initial_gap = sobolev_norm(dealias(u0p) - dealias(u0m), cfg.s);

        // measured H^s size of the cos-modulated packet that the lower bound
        // is phrased against
        const double nd = std::pow(n, cfg.delta);
        const double amp = std::pow(n, -nd2 - cfg.s);
        auto profile = ScalarField::sample(g, [&](const std::vector<double>& x) {
            double v = amp * bumps.phi(x[0] / nd) * std::cos(n * x[0]);
            for (size_t i = 1; i < x.size(); ++i) v *= bumps.phi(x[i]);
            return v;
        });
        rep.profile_norm = sobolev_norm(profile, cfg.s);

        for (size_t k = 0; k < traj_p.times.size(); ++k) {
            rep.gap.push_back(
                sobolev_norm(traj_p.snapshots[k] - traj_m.snapshots[k], cfg.s));
            rep.reference.push_back(2.0 * std::abs(std::sin(traj_p.times[k])) *
                                    rep.profile_norm);
        }

        auto approx_dev = [&](const Trajectory& full, const Trajectory& low,
                              const ConstructionParams& p) {
            double sup = 0.0;
            for (size_t k = 0; k < full.times.size(); ++k) {
                auto approx = dealias(high_freq_field(g, bumps, p, full.times[k])) +
                              low.snapshots[k];
                sup = std::max(sup,
                               sobolev_norm(full.snapshots[k] - approx, cfg.s - 1.0));
            }
            return sup;
        };
        rep.approx_dev_plus = approx_dev(traj_p, low_p, pp);
        rep.approx_dev_minus = approx_dev(traj_m, low_m, pm);
        out.reports[idx] = std::move(rep);
    });

    if (out.reports.size() >= 3) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& r : out.reports)
            pts.emplace_back(r.n, std::max(r.approx_dev_plus, r.approx_dev_minus));
        out.approx_fit = fit_rate(pts);
    }
    return out;
}

ProductLawReport product_law_probe(int sample_count, double s, const GridPtr& grid,
                                   std::uint64_t seed) {
    if (sample_count < 1) throw std::invalid_argument("product_law_probe: empty sample");
    DyadicPartition part(grid);
    double k_max = grid->dealias_limit(0);
    for (int a = 1; a < grid->dim(); ++a) k_max = std::min(k_max, grid->dealias_limit(a));
    k_max *= 0.5;

    const NormSpec bs{s, 2.0, 2.0};
    const NormSpec bs1{s - 1.0, 2.0, 2.0};

    ProductLawReport rep;
    rep.samples = sample_count;
    for (int i = 0; i < sample_count; ++i) {
        auto u = random_band_limited(grid, k_max, seed + 2 * static_cast<std::uint64_t>(i));
        auto v = random_band_limited(grid, k_max,
                                     seed + 2 * static_cast<std::uint64_t>(i) + 1);
        auto uv = pointwise_product(u, v);

        const double bu = besov_norm(u, bs, part), bv = besov_norm(v, bs, part);
        const double bu1 = besov_norm(u, bs1, part), bv1 = besov_norm(v, bs1, part);
        const double iu = linf_norm(u), iv = linf_norm(v);

        if (bu * bv > 0.0)
            rep.max_symmetric = std::max(rep.max_symmetric, besov_norm(uv, bs, part) / (bu * bv));
        const double uv1 = besov_norm(uv, bs1, part);
        if (iu * bv1 + iv * bu1 > 0.0)
            rep.max_linf = std::max(rep.max_linf, uv1 / (iu * bv1 + iv * bu1));
        if (bu1 * bv > 0.0)
            rep.max_mixed = std::max(rep.max_mixed, uv1 / (bu1 * bv));
    }
    return rep;
}

InterpolationReport interpolation_audit(const std::vector<ScalarField>& fields, double s) {
    InterpolationReport rep;
    for (const auto& f : fields) {
        const double mid = sobolev_norm(f, s);
        const double lo = sobolev_norm(f, s - 1.0);
        const double hi = sobolev_norm(f, s + 1.0);
        ++rep.checked;
        if (lo * hi == 0.0) continue;  // zero field: equality, nothing to rate
        const double ratio = mid * mid / (lo * hi);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        if (ratio > 1.0 + 1e-10) ++rep.violations;
    }
    return rep;
}

}  // namespace eplab
