#pragma once

#include <map>
#include <optional>
#include <vector>

#include "eplab/field.hpp"

namespace eplab {

struct StepPolicy {
    enum class Mode { fixed, cfl };
    Mode mode = Mode::cfl;
    double dt = 0.01;        // fixed step size (Mode::fixed)
    double safety = 0.5;     // CFL safety factor in (0, 1] (Mode::cfl)
    long max_steps = 200000;

    static StepPolicy fixed_step(double dt, long max_steps = 200000) {
        return {Mode::fixed, dt, 0.5, max_steps};
    }
    static StepPolicy cfl(double safety = 0.5, long max_steps = 200000) {
        return {Mode::cfl, 0.01, safety, max_steps};
    }
};

struct Trajectory {
    std::vector<double> times;           // strictly increasing, starting at 0
    std::vector<VectorField> snapshots;  // one per sample time
    // norm_log[s][k] = H^s norm of snapshot k, for each requested s
    std::map<double, std::vector<double>> norm_log;
};

struct SolveResult {
    Trajectory trajectory;
    bool completed = false;
    std::optional<double> blowup_time;  // set when non-finite values appeared
    long steps = 0;
};

// One classical RK4 update of d/dt u = rhs_velocity(u); result dealiased.
VectorField rk4_step(const VectorField& u, double dt);

// safety * dx_min / max(1, ||u||_Linf)
double cfl_dt(const VectorField& u, const TorusGrid& grid, double safety);

// Integrate over [0, T], landing exactly on each requested sample time by
// shortening the step. Snapshots and the norm log are recorded at the sample
// times only. Blow-up is reported through SolveResult, with the partial
// trajectory retained. Throws std::runtime_error when max_steps is exceeded.
SolveResult solve(const VectorField& u0, double T, const StepPolicy& policy,
                  std::vector<double> sample_times, const std::vector<double>& norm_list);

struct GrowthReport {
    struct Row {
        double t;
        double integral_s;    // trapezoid of ||u||_{H^s} over [0, t]
        double margin_minus;  // bound_{s-1} - ||u(t)||_{H^{s-1}} (>= 0 means holds)
        double margin_plus;   // bound_{s+1} - ||u(t)||_{H^{s+1}}
    };
    double constant = 0.0;
    std::vector<Row> rows;
    bool holds = true;
};

// Checks ||u(t)||_{H^{s +/- 1}} <= ||u0||_{H^{s +/- 1}} * exp(C * int_0^t ||u||_{H^s})
// at every sampled time, for a given calibrated constant C.
GrowthReport growth_monitor(const Trajectory& traj, double s, double constant);

// Smallest C for which the bounds above hold with equality margin on this
// trajectory (used once for calibration, then frozen).
double calibrate_growth_constant(const Trajectory& traj, double s);

}  // namespace eplab
