#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

namespace quadpair::detail {

/// In-place 1-D complex transform, forward sign -1 (numpy convention). Plans are cached per
/// (size, sign); planning is serialized, execution is thread safe.
class Fft {
public:
    static void forward(std::vector<std::complex<double>>& data) { run(data, FFTW_FORWARD); }
    /// Unnormalized inverse: sum_k x_k e(+jk/n).
    static void backward(std::vector<std::complex<double>>& data) { run(data, FFTW_BACKWARD); }

private:
    static void run(std::vector<std::complex<double>>& data, int sign) {
        if (data.size() <= 1) return;
        auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
        fftw_execute_dft(plan(static_cast<int>(data.size()), sign), ptr, ptr);
    }

    static fftw_plan plan(int n, int sign) {
        static std::mutex mutex;
        static std::map<std::pair<int, int>, fftw_plan> plans;
        std::lock_guard<std::mutex> lock(mutex);
        auto key = std::make_pair(n, sign);
        if (auto it = plans.find(key); it != plans.end()) return it->second;
        std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n));
        auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan p = fftw_plan_dft_1d(n, ptr, ptr, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans.emplace(key, p);
        return p;
    }
};

}  // namespace quadpair::detail
