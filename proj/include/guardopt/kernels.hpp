#pragma once
// Data-parallel inner loops of the waveform and PSD pipeline.
//
// Every kernel has a scalar reference implementation. Vector variants (AVX2 on
// x86-64, NEON on AArch64) are chosen once at startup from the CPU feature set
// and must produce bit-identical results to the scalar path: they use the same
// operation order and never fuse multiply-add.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace guardopt::kernels {

using cplx = std::complex<double>;

struct KernelTable {
    // x[i] *= w[i]
    void (*apply_window)(cplx* x, const double* w, std::size_t n);
    // acc[i] += re(x[i])^2 + im(x[i])^2
    void (*accumulate_power)(double* acc, const cplx* x, std::size_t n);
    // dst[i] += src[i]
    void (*add_into)(cplx* dst, const cplx* src, std::size_t n);
    std::string_view name;
};

namespace scalar {
void apply_window(cplx* x, const double* w, std::size_t n);
void accumulate_power(double* acc, const cplx* x, std::size_t n);
void add_into(cplx* dst, const cplx* src, std::size_t n);
const KernelTable& table();
}  // namespace scalar

#if defined(GUARDOPT_HAVE_AVX2)
namespace avx2 {
void apply_window(cplx* x, const double* w, std::size_t n);
void accumulate_power(double* acc, const cplx* x, std::size_t n);
void add_into(cplx* dst, const cplx* src, std::size_t n);
const KernelTable& table();
}  // namespace avx2
#endif

#if defined(GUARDOPT_HAVE_NEON)
namespace neon {
void apply_window(cplx* x, const double* w, std::size_t n);
void accumulate_power(double* acc, const cplx* x, std::size_t n);
void add_into(cplx* dst, const cplx* src, std::size_t n);
const KernelTable& table();
}  // namespace neon
#endif

/// Whether the running CPU can execute the named variant ("scalar", "avx2", "neon").
bool variant_supported(std::string_view name);

/// Table for the named variant; throws std::invalid_argument if unknown or unsupported.
const KernelTable& variant(std::string_view name);

/// Best supported variant, unless GUARDOPT_SIMD names another one.
const KernelTable& active();

inline void apply_window(std::span<cplx> x, std::span<const double> w)
{
    active().apply_window(x.data(), w.data(), x.size() < w.size() ? x.size() : w.size());
}

inline void accumulate_power(std::span<double> acc, std::span<const cplx> x)
{
    active().accumulate_power(acc.data(), x.data(), acc.size() < x.size() ? acc.size() : x.size());
}

inline void add_into(std::span<cplx> dst, std::span<const cplx> src)
{
    active().add_into(dst.data(), src.data(), dst.size() < src.size() ? dst.size() : src.size());
}

}  // namespace guardopt::kernels
