#pragma once
// Joint guard-band / guard-duration grid search: maximize eta_time * eta_freq
// over a roll-off grid subject to the suppression threshold theta.

#include "guardopt/numerology.hpp"
#include "guardopt/spectrum.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace guardopt {

struct GuardAllocation {
    double alpha = 0.0;
    int gd_samples = 0;  // T_CP-Win at the base rate
    double gb_subcarriers = 0.0;
    double eta_time = 1.0;
    double eta_freq = 1.0;
    double eta = 1.0;
    double theta_db = 0.0;
};

struct Efficiency {
    double eta_time = 1.0;
    double eta_freq = 1.0;
    double eta = 1.0;
};

/// eta_time = n_fft / (n_fft + t_cp_ch + gd), eta_freq = OBW / (OBW + 2 GB).
Efficiency spectral_efficiency(int gd_samples, double gb_subcarriers, const NumerologyConfig& cfg);

/// 0, 0.005, ..., 0.2
std::vector<double> default_alpha_grid();

/// Thrown when no roll-off in the grid reaches the threshold.
class NoFeasibleGuard : public std::runtime_error {
public:
    NoFeasibleGuard(double theta_db, const std::string& detail);
    double theta_db() const noexcept { return theta_db_; }

private:
    double theta_db_;
};

/// Required guard band for every (alpha, theta) pair; one PSD per alpha, alphas
/// evaluated in parallel.
class GuardBandGrid {
public:
    /// Throws std::invalid_argument for an empty or out-of-range alpha grid, a
    /// non-positive theta, or an alpha whose extension does not fit the symbol.
    static GuardBandGrid compute(const NumerologyConfig& cfg, std::vector<double> alpha_grid,
                                 std::vector<double> thetas_db, const SpectrumSettings& settings = {});

    const NumerologyConfig& config() const noexcept { return cfg_; }
    const std::vector<double>& alphas() const noexcept { return alphas_; }
    const std::vector<double>& thetas() const noexcept { return thetas_; }

    /// Throws std::out_of_range if theta was not part of the computation.
    std::size_t theta_index(double theta_db) const;
    const GuardBandResult& at(std::size_t alpha_index, std::size_t theta_index) const;

private:
    NumerologyConfig cfg_;
    std::vector<double> alphas_;
    std::vector<double> thetas_;
    std::vector<GuardBandResult> cells_;  // alpha-major
};

struct CurvePoint {
    double alpha = 0.0;
    int gd_samples = 0;
    std::optional<GuardAllocation> allocation;  // empty when theta is unreachable at this alpha
    std::string failure;
};

/// One point per alpha, in grid order.
std::vector<CurvePoint> efficiency_curve(double theta_db, const GuardBandGrid& grid);
std::vector<CurvePoint> efficiency_curve(double theta_db, const NumerologyConfig& cfg,
                                         std::span<const double> alpha_grid, const SpectrumSettings& settings = {});

/// Largest eta; ties go to the smaller alpha. Throws NoFeasibleGuard if no point is feasible.
GuardAllocation select_optimum(double theta_db, std::span<const CurvePoint> curve);

GuardAllocation optimize_guards(double theta_db, const GuardBandGrid& grid);
GuardAllocation optimize_guards(double theta_db, const NumerologyConfig& cfg, std::span<const double> alpha_grid,
                                const SpectrumSettings& settings = {});

struct LookupEntry {
    double theta_db = 0.0;
    std::optional<GuardAllocation> allocation;
    std::string failure;
};

/// theta -> optimal guards, ascending in theta.
struct LookupTable {
    std::vector<LookupEntry> entries;

    /// First available entry with theta >= theta_db (conservative rounding up);
    /// nullptr if every such entry is absent or theta_db exceeds the table.
    const LookupEntry* ceil(double theta_db) const;
    /// Largest theta with an allocation; NaN for an empty table.
    double max_theta() const;
};

/// Throws std::invalid_argument unless thetas are non-empty and strictly ascending.
LookupTable build_lookup_table(std::span<const double> thetas_db, const NumerologyConfig& cfg,
                               std::span<const double> alpha_grid, const SpectrumSettings& settings = {});
LookupTable build_lookup_table(const GuardBandGrid& grid);

/// FNV-1a over the canonical text of every input that shapes the table.
std::uint64_t lookup_key(const NumerologyConfig& cfg, std::span<const double> alpha_grid,
                         std::span<const double> thetas_db, const SpectrumSettings& settings);

struct RevalidationResult {
    double theta_db = 0.0;
    double achieved_suppression_db = 0.0;
    bool satisfied = false;
};

/// Regenerates the stream and PSD for each entry's alpha, measures suppression at the
/// stored GB and checks it against theta - tolerance_db. With the build settings this
/// re-derives the table independently; another seed probes Monte-Carlo spread instead.
std::vector<RevalidationResult> revalidate(const LookupTable& table, const NumerologyConfig& cfg,
                                           const SpectrumSettings& settings, double tolerance_db = 0.1);

}  // namespace guardopt
