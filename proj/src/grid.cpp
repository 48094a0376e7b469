#include "eplab/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace eplab {

TorusGrid::TorusGrid(std::vector<int> sizes, std::vector<double> periods)
    : sizes_(std::move(sizes)), periods_(std::move(periods)) {
    if (sizes_.empty() || sizes_.size() != periods_.size())
        throw std::invalid_argument("TorusGrid: sizes/periods mismatch");
    const int d = dim();
    for (int a = 0; a < d; ++a) {
        if (sizes_[a] < 8 || sizes_[a] % 2 != 0)
            throw std::invalid_argument("TorusGrid: N must be even and >= 8, got " +
                                        std::to_string(sizes_[a]));
        if (!(periods_[a] > 0.0))
            throw std::invalid_argument("TorusGrid: period must be positive");
    }

    total_ = 1;
    vol_elem_ = 1.0;
    for (int a = 0; a < d; ++a) {
        total_ *= sizes_[a];
        vol_elem_ *= spacing(a);
    }
    // row-major: last axis fastest
    strides_.assign(d, 1);
    long s = 1;
    for (int a = d - 1; a >= 0; --a) {
        strides_[a] = s;
        s *= sizes_[a];
    }

    freq_.resize(d);
    double max_sq = 0.0;
    for (int a = 0; a < d; ++a) {
        freq_[a].resize(sizes_[a]);
        const double dxi = 2.0 * std::numbers::pi / periods_[a];
        for (int i = 0; i < sizes_[a]; ++i) freq_[a][i] = wavenumber(a, i) * dxi;
        max_sq += freq_[a][sizes_[a] / 2] * freq_[a][sizes_[a] / 2];
    }
    max_freq_ = std::sqrt(max_sq);

    freq_sq_.assign(total_, 0.0);
    dealias_mask_.assign(total_, 1);
    std::vector<int> idx(d, 0);
    for (long flat = 0; flat < total_; ++flat) {
        double sq = 0.0;
        unsigned char keep = 1;
        for (int a = 0; a < d; ++a) {
            sq += freq_[a][idx[a]] * freq_[a][idx[a]];
            if (3 * std::abs(wavenumber(a, idx[a])) > sizes_[a]) keep = 0;
        }
        freq_sq_[flat] = sq;
        dealias_mask_[flat] = keep;
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < sizes_[a]) break;
            idx[a] = 0;
        }
    }
}

double TorusGrid::dealias_limit(int axis) const {
    const int kmax = sizes_[axis] / 3;
    return kmax * 2.0 * std::numbers::pi / periods_[axis];
}

GridPtr make_grid(std::vector<int> sizes, std::vector<double> periods) {
    return std::make_shared<const TorusGrid>(std::move(sizes), std::move(periods));
}

GridPtr make_grid(int dim, int n_per_axis, double period_per_axis) {
    return make_grid(std::vector<int>(dim, n_per_axis),
                     std::vector<double>(dim, period_per_axis));
}

int next_fast_size(int n) {
    if (n < 8) n = 8;
    if (n % 2) ++n;
    for (;; n += 2) {
        int m = n;
        for (int p : {2, 3, 5})
            while (m % p == 0) m /= p;
        if (m == 1) return n;
    }
}

}  // namespace eplab
