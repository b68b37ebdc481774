#include "guardopt/spectrum.hpp"

#include "fft.hpp"
#include "guardopt/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

namespace guardopt {

double PsdEstimate::power_db(std::size_t i) const
{
    const double p = power[i];
    return p > 0.0 ? 10.0 * std::log10(p) : -std::numeric_limits<double>::infinity();
}

PsdEstimate estimate_psd(std::span<const cplx> stream, const NumerologyConfig& cfg, std::size_t n_segments,
                         int oversampling)
{
    if (n_segments == 0) throw std::invalid_argument("estimate_psd: n_segments must be positive");
    if (oversampling < 1) throw std::invalid_argument("estimate_psd: oversampling must be >= 1");
    const std::size_t min_len = n_segments * 4 * static_cast<std::size_t>(cfg.n_fft()) *
                                static_cast<std::size_t>(oversampling);
    if (stream.size() < min_len)
        throw std::invalid_argument("estimate_psd: stream of " + std::to_string(stream.size()) +
                                    " samples is shorter than the required " + std::to_string(min_len));

    const std::size_t seg_len = n_segments == 1 ? stream.size() : 2 * stream.size() / (n_segments + 1);
    const std::size_t hop = seg_len / 2;
    const std::size_t pad = std::bit_ceil(4 * seg_len);

    std::vector<double> acc(pad, 0.0);
    std::vector<cplx> buf(pad);
    for (std::size_t s = 0; s < n_segments; ++s) {
        const auto first = stream.begin() + static_cast<std::ptrdiff_t>(s * hop);
        std::copy(first, first + static_cast<std::ptrdiff_t>(seg_len), buf.begin());
        std::fill(buf.begin() + static_cast<std::ptrdiff_t>(seg_len), buf.end(), cplx{});
        detail::fft_inplace(buf, detail::FftDirection::forward);
        kernels::accumulate_power(acc, buf);
    }

    const double fs = cfg.sample_rate() * oversampling;
    PsdEstimate psd;
    psd.freq_step = fs / static_cast<double>(pad);
    psd.freq_start = -fs / 2.0;
    psd.power.resize(pad);
    // fftshift: bin pad/2 holds -fs/2
    std::rotate_copy(acc.begin(), acc.begin() + static_cast<std::ptrdiff_t>(pad / 2), acc.end(), psd.power.begin());

    const int below = cfg.n_occupied() / 2;
    const int above = cfg.n_occupied() - below;
    psd.band_low = (-below - 0.5) * cfg.subcarrier_spacing();
    psd.band_high = (above + 0.5) * cfg.subcarrier_spacing();

    double in_band = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < pad; ++i) {
        const double f = psd.freq(i);
        if (f >= psd.band_low && f <= psd.band_high) {
            in_band += psd.power[i];
            ++count;
        }
    }
    if (count == 0 || !(in_band > 0.0)) throw std::runtime_error("estimate_psd: no in-band power");
    const double scale = static_cast<double>(count) / in_band;
    for (auto& p : psd.power) p *= scale;
    return psd;
}

double band_power(const PsdEstimate& psd, double lo, double hi)
{
    if (hi <= lo || psd.size() == 0) return 0.0;
    const double df = psd.freq_step;
    const double x0 = (lo - psd.grid_bottom()) / df;
    const double x1 = (hi - psd.grid_bottom()) / df;
    const auto n = static_cast<double>(psd.size());
    const double a = std::clamp(x0, 0.0, n);
    const double b = std::clamp(x1, 0.0, n);
    if (b <= a) return 0.0;

    const auto ia = static_cast<std::size_t>(std::floor(a));
    const auto ib = std::min(static_cast<std::size_t>(std::floor(b)), psd.size() - 1);
    if (ia == ib) return psd.power[ia] * (b - a) * df;

    double sum = psd.power[ia] * (static_cast<double>(ia + 1) - a);
    for (std::size_t i = ia + 1; i < ib; ++i) sum += psd.power[i];
    sum += psd.power[ib] * (b - static_cast<double>(ib));
    return sum * df;
}

AciReport measure_aci(const PsdEstimate& aggressor_psd, double guard_band_hz, double victim_obw_hz, double po_db)
{
    if (guard_band_hz < 0.0) throw std::invalid_argument("measure_aci: guard band must be non-negative");
    if (!(victim_obw_hz > 0.0)) throw std::invalid_argument("measure_aci: victim OBW must be positive");
    const double lo = aggressor_psd.band_high + guard_band_hz;
    const double hi = lo + victim_obw_hz;
    if (hi > aggressor_psd.grid_top())
        throw std::out_of_range("measure_aci: victim band reaches " + std::to_string(hi) +
                                " Hz, beyond the PSD grid edge " + std::to_string(aggressor_psd.grid_top()) + " Hz");

    const double own = band_power(aggressor_psd, aggressor_psd.band_low, aggressor_psd.band_high);
    const double leak = band_power(aggressor_psd, lo, hi);
    AciReport r;
    r.leak_power_db = leak > 0.0 ? 10.0 * std::log10(leak / own) : -std::numeric_limits<double>::infinity();
    r.achieved_sir_db = -(r.leak_power_db + po_db);
    return r;
}

namespace {

std::string describe_unreachable(double alpha, double theta_db, double best)
{
    std::ostringstream os;
    os << "threshold " << theta_db << " dB unreachable";
    if (!std::isnan(alpha)) os << " at alpha " << alpha;
    os << ": best suppression inside the PSD grid is " << best << " dB";
    return os.str();
}

}  // namespace

UnreachableThreshold::UnreachableThreshold(double alpha, double theta_db, double best_suppression_db)
    : std::runtime_error(describe_unreachable(alpha, theta_db, best_suppression_db)),
      alpha_(alpha),
      theta_db_(theta_db),
      best_suppression_db_(best_suppression_db)
{
}

std::uint64_t realization_seed(std::uint64_t seed, std::size_t r)
{
    if (r == 0) return seed;
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(r) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

PsdEstimate windowed_psd(double alpha, const NumerologyConfig& cfg, const SpectrumSettings& settings)
{
    if (settings.n_realizations == 0) throw std::invalid_argument("windowed_psd: n_realizations must be positive");
    const auto win = WindowSpec::from_alpha(alpha, cfg);
    PsdEstimate acc;
    for (std::size_t r = 0; r < settings.n_realizations; ++r) {
        const auto stream = generate_stream(
            cfg, win, {settings.n_symbols, realization_seed(settings.seed, r), settings.oversampling});
        auto psd = estimate_psd(stream, cfg, settings.n_segments, settings.oversampling);
        if (r == 0) {
            acc = std::move(psd);
            continue;
        }
        for (std::size_t i = 0; i < acc.power.size(); ++i) acc.power[i] += psd.power[i];
    }
    if (settings.n_realizations > 1) {
        const double scale = 1.0 / static_cast<double>(settings.n_realizations);
        for (auto& p : acc.power) p *= scale;
    }
    return acc;
}

double required_guard_band(const PsdEstimate& psd, double theta_db, const NumerologyConfig& cfg,
                           double tolerance_subcarriers)
{
    if (!(theta_db > 0.0)) throw std::invalid_argument("required_guard_band: theta must be positive");
    if (!(tolerance_subcarriers > 0.0)) throw std::invalid_argument("required_guard_band: tolerance must be positive");

    const double spacing = cfg.subcarrier_spacing();
    const double victim = cfg.obw();
    const double gb_max = (psd.grid_top() - psd.band_high - victim) / spacing;
    if (gb_max < 0.0) throw std::invalid_argument("required_guard_band: PSD grid cannot hold an adjacent victim band");

    auto suppression = [&](double gb) { return -measure_aci(psd, gb * spacing, victim, 0.0).leak_power_db; };

    if (suppression(0.0) >= theta_db) return 0.0;
    const double at_max = suppression(gb_max);
    if (at_max < theta_db) throw UnreachableThreshold(std::nan(""), theta_db, at_max);

    double lo = 0.0;
    double hi = gb_max;
    while (hi - lo > tolerance_subcarriers) {
        const double mid = 0.5 * (lo + hi);
        if (suppression(mid) >= theta_db)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double required_guard_band(double alpha, double theta_db, const NumerologyConfig& cfg,
                           const SpectrumSettings& settings)
{
    if (!(theta_db > 0.0)) throw std::invalid_argument("required_guard_band: theta must be positive");
    const auto psd = windowed_psd(alpha, cfg, settings);
    try {
        return required_guard_band(psd, theta_db, cfg, settings.tolerance_subcarriers);
    } catch (const UnreachableThreshold& e) {
        throw UnreachableThreshold(alpha, theta_db, e.best_suppression_db());
    }
}

std::vector<GuardBandResult> required_guard_bands(double alpha, std::span<const double> thetas_db,
                                                  const NumerologyConfig& cfg, const SpectrumSettings& settings)
{
    const auto psd = windowed_psd(alpha, cfg, settings);
    std::vector<GuardBandResult> out;
    out.reserve(thetas_db.size());
    for (double theta : thetas_db) {
        GuardBandResult r;
        r.theta_db = theta;
        try {
            r.gb_subcarriers = required_guard_band(psd, theta, cfg, settings.tolerance_subcarriers);
        } catch (const UnreachableThreshold& e) {
            r.failure = UnreachableThreshold(alpha, theta, e.best_suppression_db()).what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace guardopt
