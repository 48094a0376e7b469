#include "eplab/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace eplab::fft {

namespace {

struct PlanCache {
    std::mutex mu;
    std::map<std::pair<std::vector<int>, int>, fftw_plan> plans;

    fftw_plan get(const std::vector<int>& sizes, int sign) {
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_pair(sizes, sign);
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;
        long total = 1;
        for (int n : sizes) total *= n;
        // Plan on a scratch buffer; executed later on caller buffers via
        // fftw_execute_dft, hence FFTW_UNALIGNED.
        fftw_complex* scratch = fftw_alloc_complex(total);
        fftw_plan p = fftw_plan_dft(static_cast<int>(sizes.size()), sizes.data(),
                                    scratch, scratch, sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(scratch);
        plans.emplace(key, p);
        return p;
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

}  // namespace

std::vector<std::complex<double>> forward(const TorusGrid& grid,
                                          const std::vector<double>& physical) {
    const long total = grid.total_points();
    std::vector<std::complex<double>> in(total), out(total);
    for (long i = 0; i < total; ++i) in[i] = physical[i];
    fftw_plan p = cache().get(grid.sizes(), FFTW_FORWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = std::sqrt(grid.volume_element() / total);
    for (auto& z : out) z *= scale;
    return out;
}

std::vector<double> inverse(const TorusGrid& grid,
                            const std::vector<std::complex<double>>& spectral) {
    const long total = grid.total_points();
    std::vector<std::complex<double>> in(spectral), out(total);
    fftw_plan p = cache().get(grid.sizes(), FFTW_BACKWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = 1.0 / std::sqrt(grid.volume_element() * total);
    std::vector<double> phys(total);
    for (long i = 0; i < total; ++i) phys[i] = out[i].real() * scale;
    return phys;
}

}  // namespace eplab::fft
