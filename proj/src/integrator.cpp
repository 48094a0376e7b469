#include "eplab/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eplab/ep_rhs.hpp"
#include "eplab/littlewood_paley.hpp"

namespace eplab {

VectorField rk4_step(const VectorField& u, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be positive");
    const VectorField k1 = rhs_velocity(u);
    const VectorField k2 = rhs_velocity(lincomb(1.0, u, 0.5 * dt, k1));
    const VectorField k3 = rhs_velocity(lincomb(1.0, u, 0.5 * dt, k2));
    const VectorField k4 = rhs_velocity(lincomb(1.0, u, dt, k3));
    VectorField incr = lincomb(1.0, k1, 1.0, k4) + lincomb(2.0, k2, 2.0, k3);
    return dealias(lincomb(1.0, u, dt / 6.0, incr));
}

double cfl_dt(const VectorField& u, const TorusGrid& grid, double safety) {
    double dx = grid.spacing(0);
    for (int a = 1; a < grid.dim(); ++a) dx = std::min(dx, grid.spacing(a));
    return safety * dx / std::max(1.0, u.linf_norm());
}

namespace {

void record(Trajectory& traj, double t, const VectorField& u,
            const std::vector<double>& norm_list) {
    traj.times.push_back(t);
    traj.snapshots.push_back(u);
    for (double s : norm_list) traj.norm_log[s].push_back(sobolev_norm(u, s));
}

}  // namespace

SolveResult solve(const VectorField& u0, double T, const StepPolicy& policy,
                  std::vector<double> sample_times, const std::vector<double>& norm_list) {
    if (!(T > 0.0)) throw std::invalid_argument("solve: T must be positive");
    std::sort(sample_times.begin(), sample_times.end());
    for (double t : sample_times)
        if (t < 0.0 || t > T + 1e-12)
            throw std::invalid_argument("solve: sample time outside [0, T]");

    SolveResult res;
    VectorField u = dealias(u0);
    double t = 0.0;
    size_t next_sample = 0;
    const double t_eps = 1e-12 * std::max(1.0, T);

    while (next_sample < sample_times.size() && sample_times[next_sample] <= t_eps) {
        record(res.trajectory, 0.0, u, norm_list);
        ++next_sample;
    }

    while (t < T - t_eps) {
        if (res.steps >= policy.max_steps)
            throw std::runtime_error("solve: step-count cap exceeded");
        double dt = policy.mode == StepPolicy::Mode::fixed
                        ? policy.dt
                        : cfl_dt(u, *u.grid(), policy.safety);
        dt = std::min(dt, T - t);
        if (next_sample < sample_times.size())
            dt = std::min(dt, sample_times[next_sample] - t);

        u = rk4_step(u, dt);
        t += dt;
        ++res.steps;

        if (!all_finite(u)) {
            res.blowup_time = t;
            return res;
        }
        while (next_sample < sample_times.size() &&
               std::abs(sample_times[next_sample] - t) <= t_eps) {
            record(res.trajectory, sample_times[next_sample], u, norm_list);
            ++next_sample;
        }
    }
    // T -> 0+ style calls: no stepping happened, but samples at t=0 were kept
    res.completed = true;
    return res;
}

namespace {

double trapezoid_integral(const std::vector<double>& times, const std::vector<double>& values,
                          size_t upto) {
    double acc = 0.0;
    for (size_t k = 1; k <= upto; ++k)
        acc += 0.5 * (values[k] + values[k - 1]) * (times[k] - times[k - 1]);
    return acc;
}

}  // namespace

GrowthReport growth_monitor(const Trajectory& traj, double s, double constant) {
    for (double key : {s - 1.0, s, s + 1.0})
        if (!traj.norm_log.count(key))
            throw std::invalid_argument("growth_monitor: norm log misses required index");
    const auto& ns = traj.norm_log.at(s);
    const auto& nm = traj.norm_log.at(s - 1.0);
    const auto& np = traj.norm_log.at(s + 1.0);

    GrowthReport rep;
    rep.constant = constant;
    for (size_t k = 0; k < traj.times.size(); ++k) {
        const double integral = trapezoid_integral(traj.times, ns, k);
        const double factor = std::exp(constant * integral);
        GrowthReport::Row row;
        row.t = traj.times[k];
        row.integral_s = integral;
        row.margin_minus = nm.front() * factor - nm[k];
        row.margin_plus = np.front() * factor - np[k];
        if (row.margin_minus < -1e-12 * std::max(1.0, nm[k]) ||
            row.margin_plus < -1e-12 * std::max(1.0, np[k]))
            rep.holds = false;
        rep.rows.push_back(row);
    }
    return rep;
}

double calibrate_growth_constant(const Trajectory& traj, double s) {
    const auto& ns = traj.norm_log.at(s);
    double needed = 0.0;
    for (const double side : {-1.0, 1.0}) {
        const auto& n = traj.norm_log.at(s + side);
        if (n.front() <= 0.0) continue;
        for (size_t k = 1; k < traj.times.size(); ++k) {
            const double integral = trapezoid_integral(traj.times, ns, k);
            if (integral <= 0.0 || n[k] <= n.front()) continue;
            needed = std::max(needed, std::log(n[k] / n.front()) / integral);
        }
    }
    return needed;
}

}  // namespace eplab
