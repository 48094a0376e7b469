#pragma once

#include <memory>
#include <vector>

namespace eplab {

// Uniform discretization of the d-dimensional periodic box
// [-L_i/2, L_i/2) with the FFT frequency lattice
//   xi_k = 2*pi*k/L,  k = -N/2, ..., N/2-1   (FFT storage order)
// per axis. Immutable after construction; shared by all fields living on it.
class TorusGrid {
public:
    TorusGrid(std::vector<int> sizes, std::vector<double> periods);

    int dim() const { return static_cast<int>(sizes_.size()); }
    const std::vector<int>& sizes() const { return sizes_; }
    const std::vector<double>& periods() const { return periods_; }
    long total_points() const { return total_; }

    double spacing(int axis) const { return periods_[axis] / sizes_[axis]; }
    double volume_element() const { return vol_elem_; }

    // Physical coordinate of grid point `index` along `axis`, in [-L/2, L/2).
    double coordinate(int axis, int index) const {
        return -0.5 * periods_[axis] + index * spacing(axis);
    }

    // Signed integer wavenumber for storage slot `index` (FFT order).
    int wavenumber(int axis, int index) const {
        return index <= sizes_[axis] / 2 - 1 ? index : index - sizes_[axis];
    }

    // Angular frequency xi = 2*pi*k/L for storage slot `index`.
    double frequency(int axis, int index) const { return freq_[axis][index]; }
    const std::vector<double>& frequencies(int axis) const { return freq_[axis]; }

    bool is_nyquist(int axis, int index) const { return index == sizes_[axis] / 2; }

    // Row-major stride of `axis` in the flat storage layout.
    long stride(int axis) const { return strides_[axis]; }

    // |xi|^2 per flat mode index (precomputed; hot path of every multiplier).
    const std::vector<double>& freq_sq() const { return freq_sq_; }

    // 2/3-rule survival mask: 1 where |k_axis| <= N_axis/3 on every axis.
    const std::vector<unsigned char>& dealias_mask() const { return dealias_mask_; }

    // Largest retained angular frequency along `axis` under the 2/3 rule.
    double dealias_limit(int axis) const;

    double max_frequency() const { return max_freq_; }

    bool same_as(const TorusGrid& other) const {
        return sizes_ == other.sizes_ && periods_ == other.periods_;
    }

private:
    std::vector<int> sizes_;
    std::vector<double> periods_;
    std::vector<long> strides_;
    std::vector<std::vector<double>> freq_;
    std::vector<double> freq_sq_;
    std::vector<unsigned char> dealias_mask_;
    long total_ = 0;
    double vol_elem_ = 0.0;
    double max_freq_ = 0.0;
};

using GridPtr = std::shared_ptr<const TorusGrid>;

// Throws std::invalid_argument on odd N, N < 8, or L <= 0.
GridPtr make_grid(std::vector<int> sizes, std::vector<double> periods);

// Convenience for cubic boxes.
GridPtr make_grid(int dim, int n_per_axis, double period_per_axis);

// Smallest even integer >= n whose prime factors are all in {2, 3, 5}.
int next_fast_size(int n);

}  // namespace eplab
