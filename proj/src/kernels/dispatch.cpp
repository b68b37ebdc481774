#include "guardopt/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace guardopt::kernels {

bool variant_supported(std::string_view name)
{
    if (name == "scalar") return true;
#if defined(GUARDOPT_HAVE_AVX2)
    if (name == "avx2") {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2");
    }
#endif
#if defined(GUARDOPT_HAVE_NEON)
    if (name == "neon") return true;
#endif
    return false;
}

const KernelTable& variant(std::string_view name)
{
    if (!variant_supported(name))
        throw std::invalid_argument("kernel variant not available on this build/CPU: " + std::string(name));
#if defined(GUARDOPT_HAVE_AVX2)
    if (name == "avx2") return avx2::table();
#endif
#if defined(GUARDOPT_HAVE_NEON)
    if (name == "neon") return neon::table();
#endif
    return scalar::table();
}

namespace {

const KernelTable& select()
{
    if (const char* forced = std::getenv("GUARDOPT_SIMD"); forced != nullptr && *forced != '\0') {
        return variant(forced);
    }
    if (variant_supported("avx2")) return variant("avx2");
    if (variant_supported("neon")) return variant("neon");
    return scalar::table();
}

}  // namespace

const KernelTable& active()
{
    static const KernelTable& t = select();
    return t;
}

}  // namespace guardopt::kernels
