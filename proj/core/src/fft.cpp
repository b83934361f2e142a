#include "tubewf/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace tubewf::fft {

namespace {

// Plans are created once per (shape, sign) on a scratch buffer with
// FFTW_UNALIGNED, then re-executed on caller arrays via the new-array
// interface. Plan creation is not thread-safe in FFTW; execution is.
class PlanCache {
  public:
    fftw_plan get(int n0, int n1, int sign) {
        const Key key{n0, n1, sign};
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        const std::size_t count = static_cast<std::size_t>(n0) * (n1 > 0 ? n1 : 1);
        std::vector<fftw_complex> scratch(count);
        fftw_plan plan = nullptr;
        if (n1 <= 0) {
            plan = fftw_plan_dft_1d(n0, scratch.data(), scratch.data(), sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        } else {
            plan = fftw_plan_dft_2d(n0, n1, scratch.data(), scratch.data(), sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        }
        if (!plan) throw std::runtime_error("fftw plan creation failed");
        plans_.emplace(key, plan);
        return plan;
    }

  private:
    using Key = std::tuple<int, int, int>;
    std::mutex mutex_;
    std::map<Key, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

}  // namespace

void dft_1d(std::complex<double>* data, int n, int sign) {
    if (n < 1) throw std::invalid_argument("dft_1d: n < 1");
    fftw_plan plan = cache().get(n, 0, sign);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

void dft_2d(std::complex<double>* data, int n0, int n1, int sign) {
    if (n0 < 1 || n1 < 1) throw std::invalid_argument("dft_2d: bad shape");
    fftw_plan plan = cache().get(n0, n1, sign);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

}  // namespace tubewf::fft
