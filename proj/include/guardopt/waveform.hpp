#pragma once
// RC-windowed OFDM synthesis: modulation, cyclic extension on both edges,
// window multiplication and overlap-add of adjacent ramps.

#include "guardopt/numerology.hpp"
#include "guardopt/rng.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace guardopt {

using cplx = std::complex<double>;

/// Raised-cosine window over n_total + round(alpha * n_total) samples.
///
/// The taper of length L = round(alpha * n_total) rises as 1/2 + 1/2 cos(pi + pi n / L)
/// for n in [0, L), stays at 1 on [L, n_total), and falls as 1/2 + 1/2 cos(pi m / L)
/// at m = n - n_total. The falling ramp is the rising ramp's complement, so the two
/// sum to exactly one when overlapped sample-for-sample.
/// Throws std::invalid_argument for alpha outside [0, 1] or n_total == 0.
std::vector<double> rc_window(double alpha, std::size_t n_total);

/// Same shape with an explicit taper length. Requires taper_len <= n_total.
std::vector<double> rc_window_with_taper(std::size_t taper_len, std::size_t n_total);

struct OfdmSymbol {
    std::vector<cplx> data;         // n_fft * oversampling time samples
    std::vector<cplx> qam_payload;  // one point per occupied subcarrier
};

struct WindowedSymbol {
    std::vector<cplx> samples;  // (n_fft + t_cp_ch + 2 t_cp_win) * oversampling
    std::size_t ramp_len = 0;
};

/// Logical subcarrier indices in use: -n/2 .. -1, 1 .. n - n/2 (DC empty).
std::vector<int> occupied_subcarriers(const NumerologyConfig& cfg);

/// Inverse DFT of the payload placed on the occupied subcarriers, scaled by
/// 1/sqrt(n_occupied) so unit-power constellations give unit mean sample power.
/// With oversampling R > 1 the transform size is R * n_fft at the same spacing.
OfdmSymbol modulate_symbol(std::span<const cplx> payload, const NumerologyConfig& cfg, int oversampling = 1);

/// Prefix of t_cp_ch + t_cp_win, body, suffix of t_cp_win; the ramps cover only the
/// extra extension samples. Throws std::invalid_argument if t_cp_ch + t_cp_win >= n_fft.
WindowedSymbol extend_and_window(const OfdmSymbol& sym, const NumerologyConfig& cfg, const WindowSpec& win);

/// Symbol k starts at k * (len - ramp_len); ramps of neighbours are summed.
/// Throws std::invalid_argument on mixed ramp or symbol lengths.
std::vector<cplx> overlap_add(std::span<const WindowedSymbol> symbols);

/// QPSK points (+-1 +-j)/sqrt(2). Each point consumes one mt19937_64 output:
/// bit 0 selects the sign of I, bit 1 the sign of Q (set bit = negative).
std::vector<cplx> qpsk_payload(Rng& rng, std::size_t n);

struct StreamParams {
    std::size_t n_symbols = 100;
    std::uint64_t seed = 1;
    int oversampling = 1;
};

/// Random-QPSK windowed stream. The payload depends only on seed and n_symbols,
/// so streams for different alpha share the same data.
std::vector<cplx> generate_stream(const NumerologyConfig& cfg, const WindowSpec& win, const StreamParams& params);

/// Little-endian interleaved float32 I/Q.
void write_iq_f32(const std::filesystem::path& path, std::span<const cplx> samples);

}  // namespace guardopt
