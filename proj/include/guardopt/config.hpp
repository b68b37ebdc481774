#pragma once
// Experiment configuration: one JSON file, every key optional. Command-line flags
// override file values; file values override built-in defaults.

#include "guardopt/numerology.hpp"
#include "guardopt/scheduler.hpp"
#include "guardopt/spectrum.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace guardopt {

struct ExperimentConfig {
    NumerologyConfig numerology;
    std::vector<double> alpha_grid = default_alpha_grid();
    std::vector<double> theta_list{20, 25, 30, 35, 40, 45};
    std::vector<double> psd_alphas{0.0, 0.05, 0.1, 0.2};
    std::optional<std::filesystem::path> users;
    std::uint64_t seed = 1;
    std::filesystem::path output_dir = "out";
    std::size_t n_symbols = 100;
    std::size_t psd_segments = 1;
    std::size_t psd_realizations = 8;
    int psd_oversampling = 4;
    double fixed_theta_db = 45.0;
    SearchMode mode = SearchMode::exhaustive;

    SpectrumSettings spectrum_settings() const;
};

/// Parses a config file. Keys: n_fft, n_occupied, subcarrier_spacing_hz, t_cp_ch_samples,
/// alpha_grid (list, or {"start","stop","step"}), theta_list, psd_alphas, users, seed,
/// output_dir, n_symbols, psd_segments, psd_realizations, psd_oversampling, fixed_theta_db, mode.
/// Relative paths resolve against the file's directory. Unknown keys are rejected.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Same, from JSON text; relative paths resolve against `base_dir`.
ExperimentConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir = {});

/// start, start + step, ... up to stop inclusive (within step / 1000), computed as start + i * step.
std::vector<double> alpha_range(double start, double stop, double step);

}  // namespace guardopt
