#include "guardopt/waveform.hpp"

#include "fft.hpp"
#include "guardopt/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>

namespace guardopt {

std::vector<double> rc_window_with_taper(std::size_t taper_len, std::size_t n_total)
{
    if (n_total == 0) throw std::invalid_argument("rc_window: n_total must be positive");
    if (taper_len > n_total) throw std::invalid_argument("rc_window: taper longer than the symbol");

    std::vector<double> w(n_total + taper_len, 1.0);
    if (taper_len == 0) return w;

    const double l = static_cast<double>(taper_len);
    for (std::size_t n = 0; n < taper_len; ++n) {
        const double x = std::numbers::pi * static_cast<double>(n) / l;
        w[n] = 0.5 + 0.5 * std::cos(std::numbers::pi + x);
        w[n_total + n] = 0.5 + 0.5 * std::cos(x);
    }
    return w;
}

std::vector<double> rc_window(double alpha, std::size_t n_total)
{
    if (n_total == 0) throw std::invalid_argument("rc_window: n_total must be positive");
    const auto taper = static_cast<std::size_t>(taper_length(alpha, n_total));
    return rc_window_with_taper(taper, n_total);
}

std::vector<int> occupied_subcarriers(const NumerologyConfig& cfg)
{
    const int n = cfg.n_occupied();
    const int below = n / 2;
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(n));
    for (int k = -below; k < 0; ++k) idx.push_back(k);
    for (int k = 1; k <= n - below; ++k) idx.push_back(k);
    return idx;
}

OfdmSymbol modulate_symbol(std::span<const cplx> payload, const NumerologyConfig& cfg, int oversampling)
{
    if (oversampling < 1) throw std::invalid_argument("oversampling must be >= 1");
    if (payload.size() != static_cast<std::size_t>(cfg.n_occupied()))
        throw std::invalid_argument("payload length " + std::to_string(payload.size()) + " != n_occupied " +
                                    std::to_string(cfg.n_occupied()));

    const int m = cfg.n_fft() * oversampling;
    OfdmSymbol sym;
    sym.qam_payload.assign(payload.begin(), payload.end());
    sym.data.assign(static_cast<std::size_t>(m), cplx{});

    const auto idx = occupied_subcarriers(cfg);
    for (std::size_t j = 0; j < idx.size(); ++j) {
        const int bin = idx[j] < 0 ? m + idx[j] : idx[j];
        sym.data[static_cast<std::size_t>(bin)] = payload[j];
    }
    detail::fft_inplace(sym.data, detail::FftDirection::inverse);

    const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.n_occupied()));
    for (auto& v : sym.data) v *= scale;
    return sym;
}

WindowedSymbol extend_and_window(const OfdmSymbol& sym, const NumerologyConfig& cfg, const WindowSpec& win)
{
    if (!(win.alpha >= 0.0 && win.alpha <= 1.0)) throw std::invalid_argument("window alpha must lie in [0, 1]");
    if (win.t_cp_win < 0) throw std::invalid_argument("t_cp_win must be non-negative");
    if (win.alpha == 0.0 && win.t_cp_win != 0) throw std::invalid_argument("alpha = 0 requires t_cp_win = 0");
    if (cfg.t_cp_ch() + win.t_cp_win >= cfg.n_fft())
        throw std::invalid_argument("extension t_cp_ch + t_cp_win = " + std::to_string(cfg.t_cp_ch() + win.t_cp_win) +
                                    " must be shorter than n_fft = " + std::to_string(cfg.n_fft()));

    const std::size_t n = sym.data.size();
    const auto n_fft = static_cast<std::size_t>(cfg.n_fft());
    if (n == 0 || n % n_fft != 0) throw std::invalid_argument("symbol length is not a multiple of n_fft");
    const std::size_t r = n / n_fft;
    const std::size_t cp = r * static_cast<std::size_t>(cfg.t_cp_ch());
    const std::size_t ramp = r * static_cast<std::size_t>(win.t_cp_win);
    const std::size_t prefix = cp + ramp;

    WindowedSymbol out;
    out.ramp_len = ramp;
    out.samples.reserve(n + prefix + ramp);
    out.samples.insert(out.samples.end(), sym.data.end() - static_cast<std::ptrdiff_t>(prefix), sym.data.end());
    out.samples.insert(out.samples.end(), sym.data.begin(), sym.data.end());
    out.samples.insert(out.samples.end(), sym.data.begin(), sym.data.begin() + static_cast<std::ptrdiff_t>(ramp));

    if (ramp > 0) {
        const auto w = rc_window_with_taper(ramp, n + cp + ramp);
        kernels::apply_window(out.samples, w);
    }
    return out;
}

std::vector<cplx> overlap_add(std::span<const WindowedSymbol> symbols)
{
    if (symbols.empty()) return {};
    const std::size_t ramp = symbols.front().ramp_len;
    const std::size_t len = symbols.front().samples.size();
    for (const auto& s : symbols) {
        if (s.ramp_len != ramp) throw std::invalid_argument("overlap_add: mixed ramp lengths");
        if (s.samples.size() != len) throw std::invalid_argument("overlap_add: mixed symbol lengths");
    }
    if (len <= ramp) throw std::invalid_argument("overlap_add: symbol shorter than its ramp");

    const std::size_t stride = len - ramp;
    std::vector<cplx> out(symbols.size() * stride + ramp);
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        const auto& s = symbols[k].samples;
        cplx* dst = out.data() + k * stride;
        std::size_t copy_from = 0;
        if (k > 0 && ramp > 0) {
            kernels::add_into(std::span<cplx>(dst, ramp), std::span<const cplx>(s.data(), ramp));
            copy_from = ramp;
        }
        std::copy(s.begin() + static_cast<std::ptrdiff_t>(copy_from), s.end(), dst + copy_from);
    }
    return out;
}

std::vector<cplx> qpsk_payload(Rng& rng, std::size_t n)
{
    const double a = 1.0 / std::numbers::sqrt2;
    std::vector<cplx> out(n);
    for (auto& v : out) {
        const unsigned b = rng.bits2();
        v = cplx((b & 1u) ? -a : a, (b & 2u) ? -a : a);
    }
    return out;
}

std::vector<cplx> generate_stream(const NumerologyConfig& cfg, const WindowSpec& win, const StreamParams& params)
{
    Rng rng(params.seed);
    std::vector<WindowedSymbol> symbols;
    symbols.reserve(params.n_symbols);
    for (std::size_t k = 0; k < params.n_symbols; ++k) {
        const auto payload = qpsk_payload(rng, static_cast<std::size_t>(cfg.n_occupied()));
        symbols.push_back(extend_and_window(modulate_symbol(payload, cfg, params.oversampling), cfg, win));
    }
    return overlap_add(symbols);
}

void write_iq_f32(const std::filesystem::path& path, std::span<const cplx> samples)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    std::vector<unsigned char> buf;
    buf.reserve(samples.size() * 8);
    auto put = [&buf](float v) {
        auto bits = std::bit_cast<std::uint32_t>(v);
        for (int i = 0; i < 4; ++i) buf.push_back(static_cast<unsigned char>((bits >> (8 * i)) & 0xFFu));
    };
    for (const auto& s : samples) {
        put(static_cast<float>(s.real()));
        put(static_cast<float>(s.imag()));
    }
    f.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace guardopt
