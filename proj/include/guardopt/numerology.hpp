#pragma once

#include <cstddef>
#include <cstdint>

namespace guardopt {

/// Fixed waveform parameters of the windowed-OFDM system.
///
/// Durations are kept in samples at the base rate (n_fft * subcarrier_spacing).
/// Seconds and hertz are presentation-layer conversions.
class NumerologyConfig {
public:
    /// LTE-like 10 MHz grid: 1024-point FFT, 600 data subcarriers, 15 kHz, normal CP.
    NumerologyConfig() = default;

    /// Throws std::invalid_argument if any invariant is violated.
    NumerologyConfig(int n_fft, int n_occupied, double subcarrier_spacing_hz, int t_cp_ch_samples);

    int n_fft() const noexcept { return n_fft_; }
    int n_occupied() const noexcept { return n_occupied_; }
    double subcarrier_spacing() const noexcept { return subcarrier_spacing_; }
    int t_cp_ch() const noexcept { return t_cp_ch_; }

    double sample_rate() const noexcept { return static_cast<double>(n_fft_) * subcarrier_spacing_; }

    /// Occupied bandwidth in Hz.
    double obw() const noexcept { return static_cast<double>(n_occupied_) * subcarrier_spacing_; }

    /// Pre-windowing symbol length (body plus channel CP), samples.
    int symbol_length() const noexcept { return n_fft_ + t_cp_ch_; }

    bool operator==(const NumerologyConfig&) const = default;

private:
    int n_fft_ = 1024;
    int n_occupied_ = 600;
    double subcarrier_spacing_ = 15e3;
    int t_cp_ch_ = 72;
};

/// Roll-off factor and the windowing guard duration it implies.
struct WindowSpec {
    double alpha = 0.0;
    int t_cp_win = 0;

    /// t_cp_win = round-half-up(alpha * (n_fft + t_cp_ch)).
    static WindowSpec from_alpha(double alpha, const NumerologyConfig& cfg);
};

/// round-half-up(alpha * n_total); alpha must lie in [0, 1].
int taper_length(double alpha, std::size_t n_total);

double samples_to_duration(double n_samples, const NumerologyConfig& cfg) noexcept;
double subcarriers_to_bandwidth(double k, const NumerologyConfig& cfg) noexcept;

}  // namespace guardopt
