#include "guardopt/config.hpp"

#include "guardopt/guard_optimizer.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace guardopt {

SpectrumSettings ExperimentConfig::spectrum_settings() const
{
    SpectrumSettings s;
    s.n_symbols = n_symbols;
    s.seed = seed;
    s.oversampling = psd_oversampling;
    s.n_segments = psd_segments;
    s.n_realizations = psd_realizations;
    return s;
}

std::vector<double> alpha_range(double start, double stop, double step)
{
    if (!(step > 0.0)) throw std::invalid_argument("alpha_grid step must be positive");
    if (stop < start) throw std::invalid_argument("alpha_grid stop must not be below start");
    std::vector<double> out;
    for (long i = 0;; ++i) {
        const double a = start + static_cast<double>(i) * step;
        if (a > stop + step * 1e-3) break;
        out.push_back(std::min(a, 1.0));
    }
    return out;
}

namespace {

using nlohmann::json;

std::vector<double> number_list(const json& j, const char* key)
{
    if (!j.is_array()) throw std::invalid_argument(std::string(key) + " must be a list of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw std::invalid_argument(std::string(key) + " must be a list of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

template <class T>
T get_number(const json& j, const char* key)
{
    if (!j.is_number()) throw std::invalid_argument(std::string(key) + " must be a number");
    if constexpr (std::is_integral_v<T>) {
        if (!j.is_number_integer()) throw std::invalid_argument(std::string(key) + " must be an integer");
        if constexpr (std::is_unsigned_v<T>) {
            if (j.get<long long>() < 0) throw std::invalid_argument(std::string(key) + " must be non-negative");
        }
    }
    return j.get<T>();
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir)
{
    json root;
    try {
        root = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (!root.is_object()) throw std::invalid_argument("config: top level must be an object");

    static const std::set<std::string> known{
        "n_fft",       "n_occupied", "subcarrier_spacing_hz", "t_cp_ch_samples", "alpha_grid", "theta_list",
        "psd_alphas",  "users",      "seed",                  "output_dir",      "n_symbols",  "psd_segments",
        "psd_oversampling", "psd_realizations", "fixed_theta_db", "mode"};
    for (const auto& [k, v] : root.items())
        if (!known.contains(k)) throw std::invalid_argument("config: unknown key '" + k + "'");

    ExperimentConfig c;
    const NumerologyConfig d;
    const int n_fft = root.contains("n_fft") ? get_number<int>(root["n_fft"], "n_fft") : d.n_fft();
    const int n_occ = root.contains("n_occupied") ? get_number<int>(root["n_occupied"], "n_occupied") : d.n_occupied();
    const double spacing = root.contains("subcarrier_spacing_hz")
                               ? get_number<double>(root["subcarrier_spacing_hz"], "subcarrier_spacing_hz")
                               : d.subcarrier_spacing();
    const int cp = root.contains("t_cp_ch_samples") ? get_number<int>(root["t_cp_ch_samples"], "t_cp_ch_samples")
                                                     : d.t_cp_ch();
    c.numerology = NumerologyConfig(n_fft, n_occ, spacing, cp);

    if (root.contains("alpha_grid")) {
        const auto& g = root["alpha_grid"];
        if (g.is_object()) {
            c.alpha_grid = alpha_range(get_number<double>(g.value("start", json(0.0)), "alpha_grid.start"),
                                       get_number<double>(g.at("stop"), "alpha_grid.stop"),
                                       get_number<double>(g.at("step"), "alpha_grid.step"));
        } else {
            c.alpha_grid = number_list(g, "alpha_grid");
        }
    }
    if (root.contains("theta_list")) c.theta_list = number_list(root["theta_list"], "theta_list");
    if (root.contains("psd_alphas")) c.psd_alphas = number_list(root["psd_alphas"], "psd_alphas");
    if (root.contains("users")) {
        if (!root["users"].is_string()) throw std::invalid_argument("users must be a path string");
        std::filesystem::path p = root["users"].get<std::string>();
        c.users = p.is_relative() ? base_dir / p : p;
    }
    if (root.contains("seed")) c.seed = get_number<std::uint64_t>(root["seed"], "seed");
    if (root.contains("output_dir")) {
        if (!root["output_dir"].is_string()) throw std::invalid_argument("output_dir must be a path string");
        std::filesystem::path p = root["output_dir"].get<std::string>();
        c.output_dir = p.is_relative() ? base_dir / p : p;
    }
    if (root.contains("n_symbols")) c.n_symbols = get_number<std::size_t>(root["n_symbols"], "n_symbols");
    if (root.contains("psd_segments")) c.psd_segments = get_number<std::size_t>(root["psd_segments"], "psd_segments");
    if (root.contains("psd_realizations"))
        c.psd_realizations = get_number<std::size_t>(root["psd_realizations"], "psd_realizations");
    if (root.contains("psd_oversampling"))
        c.psd_oversampling = get_number<int>(root["psd_oversampling"], "psd_oversampling");
    if (root.contains("fixed_theta_db")) c.fixed_theta_db = get_number<double>(root["fixed_theta_db"], "fixed_theta_db");
    if (root.contains("mode")) {
        if (!root["mode"].is_string()) throw std::invalid_argument("mode must be a string");
        c.mode = parse_search_mode(root["mode"].get<std::string>());
    }

    if (c.n_symbols == 0) throw std::invalid_argument("n_symbols must be positive");
    if (c.psd_segments == 0) throw std::invalid_argument("psd_segments must be positive");
    if (c.psd_realizations == 0) throw std::invalid_argument("psd_realizations must be positive");
    if (c.psd_oversampling < 1) throw std::invalid_argument("psd_oversampling must be >= 1");
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read config " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), path.parent_path());
}

}  // namespace guardopt
