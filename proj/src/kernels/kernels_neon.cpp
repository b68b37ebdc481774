// AArch64 Advanced SIMD variant. NEON is mandatory on AArch64, so no runtime probe is needed.
#include "guardopt/kernels.hpp"

#include <arm_neon.h>

namespace guardopt::kernels::neon {

namespace {

inline double* as_doubles(cplx* p) { return reinterpret_cast<double*>(p); }
inline const double* as_doubles(const cplx* p) { return reinterpret_cast<const double*>(p); }

}  // namespace

void apply_window(cplx* x, const double* w, std::size_t n)
{
    double* xd = as_doubles(x);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t v = vld1q_f64(xd + 2 * i);
        vst1q_f64(xd + 2 * i, vmulq_f64(v, vdupq_n_f64(w[i])));
    }
}

void accumulate_power(double* acc, const cplx* x, std::size_t n)
{
    const double* xd = as_doubles(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        // de-interleave: re = (r0, r1), im = (i0, i1)
        const float64x2x2_t v = vld2q_f64(xd + 2 * i);
        const float64x2_t p = vaddq_f64(vmulq_f64(v.val[0], v.val[0]), vmulq_f64(v.val[1], v.val[1]));
        vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), p));
    }
    for (; i < n; ++i) {
        const double re = x[i].real();
        const double im = x[i].imag();
        const double p = re * re + im * im;
        acc[i] = acc[i] + p;
    }
}

void add_into(cplx* dst, const cplx* src, std::size_t n)
{
    double* d = as_doubles(dst);
    const double* s = as_doubles(src);
    for (std::size_t i = 0; i < n; ++i) {
        vst1q_f64(d + 2 * i, vaddq_f64(vld1q_f64(d + 2 * i), vld1q_f64(s + 2 * i)));
    }
}

const KernelTable& table()
{
    static const KernelTable t{&apply_window, &accumulate_power, &add_into, "neon"};
    return t;
}

}  // namespace guardopt::kernels::neon
