#include "guardopt/kernels.hpp"

namespace guardopt::kernels::scalar {

void apply_window(cplx* x, const double* w, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = cplx(x[i].real() * w[i], x[i].imag() * w[i]);
    }
}

void accumulate_power(double* acc, const cplx* x, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        const double re = x[i].real();
        const double im = x[i].imag();
        const double p = re * re + im * im;
        acc[i] = acc[i] + p;
    }
}

void add_into(cplx* dst, const cplx* src, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] = cplx(dst[i].real() + src[i].real(), dst[i].imag() + src[i].imag());
    }
}

const KernelTable& table()
{
    static const KernelTable t{&apply_window, &accumulate_power, &add_into, "scalar"};
    return t;
}

}  // namespace guardopt::kernels::scalar
