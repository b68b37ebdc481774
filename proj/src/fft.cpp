#include "fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace guardopt::detail {

namespace {

std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

class Plan {
public:
    Plan(std::span<std::complex<double>> data, FftDirection dir)
    {
        auto* p = reinterpret_cast<fftw_complex*>(data.data());
        const int sign = dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD;
        std::lock_guard lock(planner_mutex());
        plan_ = fftw_plan_dft_1d(static_cast<int>(data.size()), p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (plan_ == nullptr) throw std::runtime_error("fftw: failed to create plan");
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    ~Plan()
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }

    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_ = nullptr;
};

}  // namespace

void fft_inplace(std::span<std::complex<double>> data, FftDirection dir)
{
    if (data.empty()) return;
    Plan plan(data, dir);
    plan.execute();
}

}  // namespace guardopt::detail
