#include "opmod/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace opmod {

namespace {

std::mutex plan_mutex;

std::vector<cplx> run(const std::vector<cplx>& in, int sign) {
    const std::size_t n = in.size();
    std::vector<cplx> out(n);
    if (n == 0) return out;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(n),
                                reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                                reinterpret_cast<fftw_complex*>(out.data()), sign,
                                FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        fftw_destroy_plan(plan);
    }
    return out;
}

} // namespace

std::vector<cplx> fft_forward(const std::vector<cplx>& in) { return run(in, FFTW_FORWARD); }

std::vector<cplx> fft_inverse(const std::vector<cplx>& in) {
    std::vector<cplx> out = run(in, FFTW_BACKWARD);
    const double scale = out.empty() ? 1.0 : 1.0 / static_cast<double>(out.size());
    for (auto& v : out) v *= scale;
    return out;
}

} // namespace opmod
