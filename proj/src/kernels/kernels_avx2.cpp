// Compiled with -mavx2 only; dispatch guarantees the CPU supports it before any call.
#include "guardopt/kernels.hpp"

#include <immintrin.h>

namespace guardopt::kernels::avx2 {

namespace {

inline double* as_doubles(cplx* p) { return reinterpret_cast<double*>(p); }
inline const double* as_doubles(const cplx* p) { return reinterpret_cast<const double*>(p); }

}  // namespace

void apply_window(cplx* x, const double* w, std::size_t n)
{
    double* xd = as_doubles(x);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d wv = _mm256_loadu_pd(w + i);
        const __m256d wlo = _mm256_permute4x64_pd(wv, 0x50);  // w0 w0 w1 w1
        const __m256d whi = _mm256_permute4x64_pd(wv, 0xFA);  // w2 w2 w3 w3
        const __m256d a = _mm256_loadu_pd(xd + 2 * i);
        const __m256d b = _mm256_loadu_pd(xd + 2 * i + 4);
        _mm256_storeu_pd(xd + 2 * i, _mm256_mul_pd(a, wlo));
        _mm256_storeu_pd(xd + 2 * i + 4, _mm256_mul_pd(b, whi));
    }
    for (; i < n; ++i) {
        x[i] = cplx(x[i].real() * w[i], x[i].imag() * w[i]);
    }
}

void accumulate_power(double* acc, const cplx* x, std::size_t n)
{
    const double* xd = as_doubles(x);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(xd + 2 * i);
        const __m256d b = _mm256_loadu_pd(xd + 2 * i + 4);
        const __m256d sa = _mm256_mul_pd(a, a);
        const __m256d sb = _mm256_mul_pd(b, b);
        // hadd interleaves 128-bit lanes: p0 p2 p1 p3
        const __m256d h = _mm256_hadd_pd(sa, sb);
        const __m256d p = _mm256_permute4x64_pd(h, 0xD8);
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), p));
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
    const std::size_t m = 2 * n;
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        _mm256_storeu_pd(d + i, _mm256_add_pd(_mm256_loadu_pd(d + i), _mm256_loadu_pd(s + i)));
    }
    for (; i < m; ++i) {
        d[i] = d[i] + s[i];
    }
}

const KernelTable& table()
{
    static const KernelTable t{&apply_window, &accumulate_power, &add_into, "avx2"};
    return t;
}

}  // namespace guardopt::kernels::avx2
