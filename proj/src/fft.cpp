#include "ckdv/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace ckdv::fft {
namespace {

// Plan creation is not thread safe; execution via fftw_execute_dft on
// caller-owned buffers is.
std::mutex plan_mutex;

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

fftw_complex* as_fftw(std::vector<std::complex<double>>& v) {
    return reinterpret_cast<fftw_complex*>(v.data());
}

PlanPair& plans_for(std::size_t n) {
    static std::map<std::size_t, PlanPair> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> scratch(n);
    PlanPair p;
    p.fwd = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(scratch), as_fftw(scratch),
                             FFTW_FORWARD, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(scratch), as_fftw(scratch),
                             FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
    return cache.emplace(n, p).first->second;
}

} // namespace

void forward(std::vector<std::complex<double>>& data) {
    auto& p = plans_for(data.size());
    fftw_execute_dft(p.fwd, as_fftw(data), as_fftw(data));
}

void inverse(std::vector<std::complex<double>>& data) {
    auto& p = plans_for(data.size());
    fftw_execute_dft(p.bwd, as_fftw(data), as_fftw(data));
}

} // namespace ckdv::fft
