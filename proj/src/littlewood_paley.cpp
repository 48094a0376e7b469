#include "eplab/littlewood_paley.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "eplab/smooth_step.hpp"

namespace eplab {

double DyadicPartition::chi(double radius) {
    return 1.0 - smooth_step(3.0 * (radius - 1.0));
}

double DyadicPartition::ring(double radius) { return chi(radius / 2.0) - chi(radius); }

DyadicPartition::DyadicPartition(GridPtr grid) : grid_(std::move(grid)) {
    const double max_xi = grid_->max_frequency();
    if (max_xi < 0.75)
        throw std::invalid_argument("DyadicPartition: grid too coarse, max |xi| = " +
                                    std::to_string(max_xi) + " < 3/4");
    j_max_ = static_cast<int>(std::ceil(std::log2(max_xi))) + 1;

    const auto& fsq = grid_->freq_sq();
    const long total = grid_->total_points();
    tables_.assign(static_cast<size_t>(j_max_ + 2), std::vector<double>(total));
    for (long i = 0; i < total; ++i) {
        const double r = std::sqrt(fsq[i]);
        tables_[0][i] = chi(r);
        for (int j = 0; j <= j_max_; ++j) tables_[1 + j][i] = ring(std::ldexp(r, -j));
    }

    // invariants: values in [0,1], supports inside ball/rings, unity sum
    for (long i = 0; i < total; ++i) {
        const double r = std::sqrt(fsq[i]);
        if (tables_[0][i] < -1e-12 || tables_[0][i] > 1.0 + 1e-12 ||
            (tables_[0][i] > 0.0 && r > 4.0 / 3.0 + 1e-12))
            throw std::logic_error("DyadicPartition: chi support violated");
        for (int j = 0; j <= j_max_; ++j) {
            const double v = tables_[1 + j][i];
            const double scaled = std::ldexp(r, -j);
            if (v < -1e-12 || v > 1.0 + 1e-12 ||
                (v > 0.0 && (scaled < 0.75 - 1e-12 || scaled > 8.0 / 3.0 + 1e-12)))
                throw std::logic_error("DyadicPartition: ring support violated");
        }
        if (std::abs(partition_sum(i) - 1.0) > 1e-12)
            throw std::logic_error("DyadicPartition: unity defect at lattice point");
    }
}

const std::vector<double>& DyadicPartition::multiplier(int j) const {
    if (j < -1 || j > j_max_) throw std::out_of_range("DyadicPartition: block index");
    return tables_[static_cast<size_t>(j + 1)];
}

double DyadicPartition::partition_sum(long flat) const {
    double s = 0.0;
    for (const auto& t : tables_) s += t[flat];
    return s;
}

namespace {

ScalarField apply_table(const ScalarField& f, const std::vector<double>& table) {
    std::vector<cplx> out(f.spectral());
    for (size_t i = 0; i < out.size(); ++i) out[i] *= table[i];
    return ScalarField::from_spectral(f.grid(), std::move(out));
}

}  // namespace

ScalarField lp_block(const ScalarField& f, int j, const DyadicPartition& P) {
    return apply_table(f, P.multiplier(j));
}

VectorField lp_block(const VectorField& u, int j, const DyadicPartition& P) {
    std::vector<ScalarField> out;
    out.reserve(u.dim());
    for (const auto& c : u.comp) out.push_back(lp_block(c, j, P));
    return VectorField(std::move(out));
}

ScalarField low_cutoff(const ScalarField& f, int j, const DyadicPartition& P) {
    const long total = f.grid()->total_points();
    std::vector<double> table(total, 0.0);
    for (int jp = -1; jp <= std::min(j - 1, P.j_max()); ++jp) {
        const auto& m = P.multiplier(jp);
        for (long i = 0; i < total; ++i) table[i] += m[i];
    }
    return apply_table(f, table);
}

VectorField low_cutoff(const VectorField& u, int j, const DyadicPartition& P) {
    std::vector<ScalarField> out;
    out.reserve(u.dim());
    for (const auto& c : u.comp) out.push_back(low_cutoff(c, j, P));
    return VectorField(std::move(out));
}

namespace {

double block_lp_norm(const ScalarField& f, int j, const DyadicPartition& P, double p) {
    if (p == 2.0) {
        const auto& m = P.multiplier(j);
        const auto& s = f.spectral();
        double sq = 0.0;
        for (size_t i = 0; i < s.size(); ++i) sq += m[i] * m[i] * std::norm(s[i]);
        return std::sqrt(sq);
    }
    const ScalarField block = lp_block(f, j, P);
    if (std::isinf(p)) return block.linf_norm();
    double acc = 0.0;
    for (double v : block.physical()) acc += std::pow(std::abs(v), p);
    return std::pow(acc * f.grid()->volume_element(), 1.0 / p);
}

}  // namespace

double besov_norm(const ScalarField& f, const NormSpec& spec, const DyadicPartition& P) {
    double acc = 0.0;
    double peak = 0.0;
    for (int j = -1; j <= P.j_max(); ++j) {
        const double term = std::exp2(j * spec.s) * block_lp_norm(f, j, P, spec.p);
        if (std::isinf(spec.r))
            peak = std::max(peak, term);
        else
            acc += std::pow(term, spec.r);
    }
    return std::isinf(spec.r) ? peak : std::pow(acc, 1.0 / spec.r);
}

double besov_norm(const VectorField& u, const NormSpec& spec, const DyadicPartition& P) {
    double sq = 0.0;
    for (const auto& c : u.comp) {
        const double n = besov_norm(c, spec, P);
        sq += n * n;
    }
    return std::sqrt(sq);
}

double sobolev_norm(const ScalarField& f, double s) {
    const auto& fsq = f.grid()->freq_sq();
    const auto& sp = f.spectral();
    double acc = 0.0;
    for (size_t i = 0; i < sp.size(); ++i) acc += std::pow(1.0 + fsq[i], s) * std::norm(sp[i]);
    return std::sqrt(acc);
}

double sobolev_norm(const VectorField& u, double s) {
    double sq = 0.0;
    for (const auto& c : u.comp) {
        const double n = sobolev_norm(c, s);
        sq += n * n;
    }
    return std::sqrt(sq);
}

double linf_norm(const ScalarField& f) { return f.linf_norm(); }
double linf_norm(const VectorField& u) { return u.linf_norm(); }

}  // namespace eplab
