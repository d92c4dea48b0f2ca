#include "crl/dft.hpp"

#include <fftw3.h>

#include <mutex>

namespace crl {

std::vector<cplx> dft(const std::vector<cplx>& in, int sign) {
    static std::mutex plan_mutex; // FFTW planning is not thread-safe
    const int n = static_cast<int>(in.size());
    std::vector<cplx> out(in.size());
    if (n == 0) return out;
    std::vector<cplx> work(in);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(work.data()),
                                reinterpret_cast<fftw_complex*>(out.data()),
                                sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        fftw_destroy_plan(plan);
    }
    return out;
}

} // namespace crl
