#pragma once
// PSD estimation of windowed-OFDM streams, adjacent-channel leakage and the
// minimum guard band for an interference threshold.

#include "guardopt/numerology.hpp"
#include "guardopt/waveform.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace guardopt {

/// Averaged periodogram on a uniform, DC-centred grid.
///
/// `power` is linear and normalized so its mean over the occupied band is 1 (0 dB).
/// The occupied band spans the main lobes of the outermost subcarriers:
/// [(k_min - 1/2) * spacing, (k_max + 1/2) * spacing].
struct PsdEstimate {
    double freq_start = 0.0;  // Hz, centre of bin 0
    double freq_step = 0.0;   // Hz
    std::vector<double> power;
    double band_low = 0.0;   // Hz
    double band_high = 0.0;  // Hz

    std::size_t size() const noexcept { return power.size(); }
    double freq(std::size_t i) const noexcept { return freq_start + freq_step * static_cast<double>(i); }
    double power_db(std::size_t i) const;
    /// Upper edge of the last bin.
    double grid_top() const noexcept { return freq(size() - 1) + 0.5 * freq_step; }
    double grid_bottom() const noexcept { return freq_start - 0.5 * freq_step; }
};

struct AciReport {
    double leak_power_db = 0.0;    // victim-band power over aggressor-band power
    double achieved_sir_db = 0.0;  // -(leak_power_db + po)
};

/// Welch estimate: n_segments segments of length floor(2 len / (n_segments + 1)) at
/// 50 % overlap (the whole stream when n_segments == 1), rectangular weighting, each
/// zero-padded to the next power of two >= 4x the segment length.
/// `oversampling` is the stream's rate relative to cfg.sample_rate().
/// Throws std::invalid_argument if the stream is shorter than n_segments * 4 * n_fft * oversampling.
PsdEstimate estimate_psd(std::span<const cplx> stream, const NumerologyConfig& cfg, std::size_t n_segments,
                         int oversampling = 1);

/// Power integrated over [lo, hi] Hz, treating each bin as a flat cell of width freq_step.
double band_power(const PsdEstimate& psd, double lo, double hi);

/// Victim band [band_high + guard_band, band_high + guard_band + victim_obw].
/// Throws std::out_of_range if the victim band leaves the PSD grid.
AciReport measure_aci(const PsdEstimate& aggressor_psd, double guard_band_hz, double victim_obw_hz, double po_db);

/// Raised when no guard band inside the PSD grid achieves the requested suppression.
class UnreachableThreshold : public std::runtime_error {
public:
    UnreachableThreshold(double alpha, double theta_db, double best_suppression_db);
    double alpha() const noexcept { return alpha_; }
    double theta_db() const noexcept { return theta_db_; }
    double best_suppression_db() const noexcept { return best_suppression_db_; }

private:
    double alpha_;
    double theta_db_;
    double best_suppression_db_;
};

/// Monte-Carlo settings of the leakage measurement.
struct SpectrumSettings {
    std::size_t n_symbols = 100;
    std::uint64_t seed = 1;
    int oversampling = 4;        // PSD grid spans +-oversampling * sample_rate / 2
    std::size_t n_segments = 1;  // whole-stream periodogram
    double tolerance_subcarriers = 0.01;
    std::size_t n_realizations = 8;  // independent streams averaged
};

/// Seed of realization r: `seed` itself for r == 0, a splitmix64 mix of (seed, r) otherwise,
/// so realizations of neighbouring seeds do not overlap.
std::uint64_t realization_seed(std::uint64_t seed, std::size_t r);

/// Stream synthesis plus estimate_psd for one roll-off; with several realizations the
/// normalized estimates of independent streams are averaged bin by bin.
PsdEstimate windowed_psd(double alpha, const NumerologyConfig& cfg, const SpectrumSettings& settings);

/// Smallest guard band (subcarriers, fractional) with suppression -leak >= theta against
/// an adjacent victim of the configured OBW, found by bisection on `psd`.
/// Throws UnreachableThreshold (alpha reported as NaN) when the grid is too narrow.
double required_guard_band(const PsdEstimate& psd, double theta_db, const NumerologyConfig& cfg,
                           double tolerance_subcarriers = 0.01);

/// Generates the PSD for `alpha` and searches it.
double required_guard_band(double alpha, double theta_db, const NumerologyConfig& cfg,
                           const SpectrumSettings& settings = {});

struct GuardBandResult {
    double theta_db = 0.0;
    std::optional<double> gb_subcarriers;
    std::string failure;  // set when gb_subcarriers is empty
};

/// One PSD, many thresholds.
std::vector<GuardBandResult> required_guard_bands(double alpha, std::span<const double> thetas_db,
                                                  const NumerologyConfig& cfg, const SpectrumSettings& settings);

}  // namespace guardopt
