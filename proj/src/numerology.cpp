#include "guardopt/numerology.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace guardopt {

NumerologyConfig::NumerologyConfig(int n_fft, int n_occupied, double subcarrier_spacing_hz, int t_cp_ch_samples)
    : n_fft_(n_fft), n_occupied_(n_occupied), subcarrier_spacing_(subcarrier_spacing_hz), t_cp_ch_(t_cp_ch_samples)
{
    if (n_fft_ <= 0) throw std::invalid_argument("n_fft must be positive");
    if (n_occupied_ <= 0) throw std::invalid_argument("n_occupied must be positive");
    // DC is left empty, so one bin is never available.
    if (n_occupied_ > n_fft_ - 1)
        throw std::invalid_argument("n_occupied must leave the DC bin free (n_occupied < n_fft)");
    if (!(subcarrier_spacing_ > 0.0) || !std::isfinite(subcarrier_spacing_))
        throw std::invalid_argument("subcarrier_spacing_hz must be positive and finite");
    if (t_cp_ch_ < 0) throw std::invalid_argument("t_cp_ch_samples must be non-negative");
    if (t_cp_ch_ >= n_fft_) throw std::invalid_argument("t_cp_ch_samples must be shorter than n_fft");
}

int taper_length(double alpha, std::size_t n_total)
{
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("roll-off alpha must lie in [0, 1], got " + std::to_string(alpha));
    return static_cast<int>(std::floor(alpha * static_cast<double>(n_total) + 0.5));
}

WindowSpec WindowSpec::from_alpha(double alpha, const NumerologyConfig& cfg)
{
    return WindowSpec{alpha, taper_length(alpha, static_cast<std::size_t>(cfg.symbol_length()))};
}

double samples_to_duration(double n_samples, const NumerologyConfig& cfg) noexcept
{
    return n_samples / cfg.sample_rate();
}

double subcarriers_to_bandwidth(double k, const NumerologyConfig& cfg) noexcept
{
    return k * cfg.subcarrier_spacing();
}

}  // namespace guardopt
