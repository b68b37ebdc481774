#include "guardopt/guard_optimizer.hpp"

#include "guardopt/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace guardopt {

Efficiency spectral_efficiency(int gd_samples, double gb_subcarriers, const NumerologyConfig& cfg)
{
    const double t_ofdm = cfg.n_fft();
    const double t_total = t_ofdm + cfg.t_cp_ch() + gd_samples;
    const double obw = cfg.obw();
    const double gb_hz = subcarriers_to_bandwidth(gb_subcarriers, cfg);

    Efficiency e;
    e.eta_time = t_ofdm / t_total;
    e.eta_freq = obw / (obw + gb_hz * 2.0);
    e.eta = e.eta_time * e.eta_freq;
    return e;
}

std::vector<double> default_alpha_grid()
{
    std::vector<double> g;
    for (int i = 0; i <= 40; ++i) g.push_back(i * 0.005);
    return g;
}

NoFeasibleGuard::NoFeasibleGuard(double theta_db, const std::string& detail)
    : std::runtime_error("no roll-off in the grid reaches theta = " + std::to_string(theta_db) + " dB" +
                         (detail.empty() ? std::string() : ": " + detail)),
      theta_db_(theta_db)
{
}

GuardBandGrid GuardBandGrid::compute(const NumerologyConfig& cfg, std::vector<double> alpha_grid,
                                     std::vector<double> thetas_db, const SpectrumSettings& settings)
{
    if (alpha_grid.empty()) throw std::invalid_argument("alpha grid is empty");
    if (thetas_db.empty()) throw std::invalid_argument("theta list is empty");
    for (double a : alpha_grid) {
        const auto win = WindowSpec::from_alpha(a, cfg);  // validates the range
        if (cfg.t_cp_ch() + win.t_cp_win >= cfg.n_fft())
            throw std::invalid_argument("alpha " + std::to_string(a) + " needs an extension longer than the symbol");
    }
    for (double t : thetas_db)
        if (!(t > 0.0)) throw std::invalid_argument("theta must be positive, got " + std::to_string(t));

    GuardBandGrid g;
    g.cfg_ = cfg;
    g.alphas_ = std::move(alpha_grid);
    g.thetas_ = std::move(thetas_db);
    g.cells_.resize(g.alphas_.size() * g.thetas_.size());

    parallel_for(g.alphas_.size(), [&](std::size_t i) {
        auto row = required_guard_bands(g.alphas_[i], g.thetas_, cfg, settings);
        std::move(row.begin(), row.end(), g.cells_.begin() + static_cast<std::ptrdiff_t>(i * g.thetas_.size()));
    });
    return g;
}

std::size_t GuardBandGrid::theta_index(double theta_db) const
{
    for (std::size_t j = 0; j < thetas_.size(); ++j)
        if (thetas_[j] == theta_db) return j;
    throw std::out_of_range("theta " + std::to_string(theta_db) + " dB is not in the guard-band grid");
}

const GuardBandResult& GuardBandGrid::at(std::size_t alpha_index, std::size_t theta_index) const
{
    return cells_.at(alpha_index * thetas_.size() + theta_index);
}

std::vector<CurvePoint> efficiency_curve(double theta_db, const GuardBandGrid& grid)
{
    const std::size_t j = grid.theta_index(theta_db);
    const auto& cfg = grid.config();
    std::vector<CurvePoint> curve;
    curve.reserve(grid.alphas().size());
    for (std::size_t i = 0; i < grid.alphas().size(); ++i) {
        CurvePoint p;
        p.alpha = grid.alphas()[i];
        p.gd_samples = WindowSpec::from_alpha(p.alpha, cfg).t_cp_win;
        const auto& cell = grid.at(i, j);
        if (cell.gb_subcarriers) {
            const auto e = spectral_efficiency(p.gd_samples, *cell.gb_subcarriers, cfg);
            p.allocation = GuardAllocation{p.alpha, p.gd_samples, *cell.gb_subcarriers, e.eta_time, e.eta_freq, e.eta,
                                           theta_db};
        } else {
            p.failure = cell.failure;
        }
        curve.push_back(std::move(p));
    }
    return curve;
}

std::vector<CurvePoint> efficiency_curve(double theta_db, const NumerologyConfig& cfg,
                                         std::span<const double> alpha_grid, const SpectrumSettings& settings)
{
    const auto grid = GuardBandGrid::compute(cfg, {alpha_grid.begin(), alpha_grid.end()}, {theta_db}, settings);
    return efficiency_curve(theta_db, grid);
}

GuardAllocation select_optimum(double theta_db, std::span<const CurvePoint> curve)
{
    const GuardAllocation* best = nullptr;
    for (const auto& p : curve) {
        if (!p.allocation) continue;
        const auto& a = *p.allocation;
        if (best == nullptr || a.eta > best->eta || (a.eta == best->eta && a.alpha < best->alpha)) best = &a;
    }
    if (best == nullptr) {
        const std::string detail = curve.empty() ? std::string("empty grid") : curve.back().failure;
        throw NoFeasibleGuard(theta_db, detail);
    }
    return *best;
}

GuardAllocation optimize_guards(double theta_db, const GuardBandGrid& grid)
{
    const auto curve = efficiency_curve(theta_db, grid);
    return select_optimum(theta_db, curve);
}

GuardAllocation optimize_guards(double theta_db, const NumerologyConfig& cfg, std::span<const double> alpha_grid,
                                const SpectrumSettings& settings)
{
    const auto curve = efficiency_curve(theta_db, cfg, alpha_grid, settings);
    return select_optimum(theta_db, curve);
}

const LookupEntry* LookupTable::ceil(double theta_db) const
{
    constexpr double eps = 1e-9;
    for (const auto& e : entries) {
        if (e.theta_db + eps >= theta_db && e.allocation) return &e;
    }
    return nullptr;
}

double LookupTable::max_theta() const
{
    for (auto it = entries.rbegin(); it != entries.rend(); ++it)
        if (it->allocation) return it->theta_db;
    return std::nan("");
}

LookupTable build_lookup_table(const GuardBandGrid& grid)
{
    LookupTable table;
    for (double theta : grid.thetas()) {
        LookupEntry e;
        e.theta_db = theta;
        try {
            e.allocation = optimize_guards(theta, grid);
        } catch (const NoFeasibleGuard& ex) {
            e.failure = ex.what();
        }
        table.entries.push_back(std::move(e));
    }
    return table;
}

LookupTable build_lookup_table(std::span<const double> thetas_db, const NumerologyConfig& cfg,
                               std::span<const double> alpha_grid, const SpectrumSettings& settings)
{
    if (thetas_db.empty()) throw std::invalid_argument("theta list is empty");
    for (std::size_t i = 1; i < thetas_db.size(); ++i)
        if (!(thetas_db[i] > thetas_db[i - 1])) throw std::invalid_argument("theta list must be strictly ascending");
    const auto grid = GuardBandGrid::compute(cfg, {alpha_grid.begin(), alpha_grid.end()},
                                             {thetas_db.begin(), thetas_db.end()}, settings);
    return build_lookup_table(grid);
}

namespace {

void append_double(std::string& s, double v)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);  // shortest round-trip form
    s.append(buf, end);
    s.push_back(';');
}

}  // namespace

std::uint64_t lookup_key(const NumerologyConfig& cfg, std::span<const double> alpha_grid,
                         std::span<const double> thetas_db, const SpectrumSettings& settings)
{
    std::string text = "guardopt-lookup-v1;";
    text += std::to_string(cfg.n_fft()) + ';' + std::to_string(cfg.n_occupied()) + ';' +
            std::to_string(cfg.t_cp_ch()) + ';';
    append_double(text, cfg.subcarrier_spacing());
    text += "alpha;";
    for (double a : alpha_grid) append_double(text, a);
    text += "theta;";
    for (double t : thetas_db) append_double(text, t);
    text += std::to_string(settings.n_symbols) + ';' + std::to_string(settings.seed) + ';' +
            std::to_string(settings.oversampling) + ';' + std::to_string(settings.n_segments) + ';' +
            std::to_string(settings.n_realizations) + ';';
    append_double(text, settings.tolerance_subcarriers);

    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::vector<RevalidationResult> revalidate(const LookupTable& table, const NumerologyConfig& cfg,
                                           const SpectrumSettings& settings, double tolerance_db)
{
    std::vector<const LookupEntry*> present;
    for (const auto& e : table.entries)
        if (e.allocation) present.push_back(&e);

    std::vector<RevalidationResult> out(present.size());
    parallel_for(present.size(), [&](std::size_t i) {
        const auto& a = *present[i]->allocation;
        const auto psd = windowed_psd(a.alpha, cfg, settings);
        const auto aci = measure_aci(psd, subcarriers_to_bandwidth(a.gb_subcarriers, cfg), cfg.obw(), 0.0);
        out[i].theta_db = present[i]->theta_db;
        out[i].achieved_suppression_db = -aci.leak_power_db;
        out[i].satisfied = out[i].achieved_suppression_db >= present[i]->theta_db - tolerance_db;
    });
    return out;
}

}  // namespace guardopt
