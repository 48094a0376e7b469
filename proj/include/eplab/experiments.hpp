#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eplab/datagen.hpp"
#include "eplab/field.hpp"
#include "eplab/integrator.hpp"

namespace eplab {

// Shared knob set for the experiment drivers (filled from the config file by
// the CLI, or constructed directly in tests).
struct ExperimentConfig {
    int dim = 2;
    double s = 2.6;
    double delta = 0.25;
    std::vector<int> n_list = {8, 16, 24, 32};
    double T = 1.0;
    std::vector<double> sample_times = {0.0, 0.25, 0.5, 0.75, 1.0};
    double decay_time = 0.5;  // evaluation time for the residual scan
    double cfl_safety = 0.5;
    long max_steps = 200000;
    std::uint64_t seed = 12345;
    int sample_count = 200;
    std::string out_dir = "results";
};

// Least-squares power-law fit value ~ n^slope on log-log axes.
struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<std::pair<double, double>> points;  // (n, value)
};

// Requires >= 3 points with positive n and value.
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

// --- modulated-packet norm asymptotics -------------------------------------

struct Lemma3Row {
    int n;
    double value;      // n^{-delta/2-s} ||phi(x/n^delta) trig(nx - alpha)||_{H^s}
    double deviation;  // |value - limit| / limit
};
struct Lemma3Result {
    double limit;  // phi_l2 / sqrt(2)
    std::vector<Lemma3Row> rows;
    RateFit deviation_fit;  // convergence rate of the deviation
};

// One-dimensional scan; use_cos selects the cosine carrier, otherwise sine.
Lemma3Result lemma3_scan(const BumpPair& bumps, double s, double delta, double alpha,
                         const std::vector<int>& n_list, bool use_cos);

// --- residual decay ----------------------------------------------------------

struct DecayRow {
    int n;
    double norm_E;    // H^{s-1} of the full fast-forcing residual
    double norm_E11;  // low-frequency drift piece
    double norm_E12;  // envelope-derivative piece
    double norm_E13;  // transverse piece
    double norm_F;    // H^{s-1} of the quadratic coupling residual
};
struct DecayResult {
    double t;  // evaluation time
    std::vector<DecayRow> rows;
    RateFit fit_E, fit_E11, fit_E12, fit_E13, fit_F;
};

DecayResult decay_scan(const ExperimentConfig& cfg);

// --- low-frequency stability --------------------------------------------------

struct StabilityRow {
    int n;
    double sup_deviation;  // sup over sampled t of ||u^l(t) - u^l(0)||_{H^s}
};
struct StabilityResult {
    std::vector<StabilityRow> rows;
    RateFit fit;
};

StabilityResult stability_scan(const ExperimentConfig& cfg);

// --- the non-uniform-dependence gap -------------------------------------------

struct GapReport {
    int n = 0;
    std::vector<double> times;
    std::vector<double> gap;        // ||u_{+1,n}(t) - u_{-1,n}(t)||_{H^s}
    std::vector<double> reference;  // 2 |sin t| * profile_norm
    double profile_norm = 0.0;      // H^s norm of the cos-modulated packet
    double initial_gap = 0.0;
    double epsilon_n = 0.0;        // n^{-1/2 + delta/2}
    double epsilon_prime_n = 0.0;  // epsilon_n + n^{delta/2 - 1}
    // sup over sampled t of ||u_{omega}(t) - (u^h + u^l)(t)||_{H^{s-1}}
    double approx_dev_plus = 0.0;
    double approx_dev_minus = 0.0;
};
struct GapScan {
    std::vector<GapReport> reports;  // one per n, in n_list order
    RateFit approx_fit;              // decay of max(approx_dev) across n
};

GapScan gap_experiment(const ExperimentConfig& cfg);

// --- product-law constants ------------------------------------------------------

struct ProductLawReport {
    // max over sampled pairs of ||uv||_{B^s} / (||u||_{B^s} ||v||_{B^s})
    double max_symmetric = 0.0;
    // max of ||uv||_{B^{s-1}} / (||u||_inf ||v||_{B^{s-1}} + ||v||_inf ||u||_{B^{s-1}})
    double max_linf = 0.0;
    // max of ||uv||_{B^{s-1}} / (||u||_{B^{s-1}} ||v||_{B^s})
    double max_mixed = 0.0;
    int samples = 0;
};

ProductLawReport product_law_probe(int sample_count, double s, const GridPtr& grid,
                                   std::uint64_t seed);

// --- interpolation inequality -----------------------------------------------------

struct InterpolationReport {
    int checked = 0;
    int violations = 0;   // count of ||f||_s^2 > ||f||_{s-1} ||f||_{s+1} (1 + 1e-10)
    double max_ratio = 0.0;  // largest ||f||_s^2 / (||f||_{s-1} ||f||_{s+1})
};

InterpolationReport interpolation_audit(const std::vector<ScalarField>& fields, double s);

}  // namespace eplab
