#include "guardopt/cli.hpp"

#include "guardopt/config.hpp"
#include "guardopt/csv.hpp"
#include "guardopt/guard_optimizer.hpp"
#include "guardopt/scheduler.hpp"
#include "guardopt/spectrum.hpp"
#include "guardopt/waveform.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace guardopt::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Overrides {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::vector<double> theta;
    std::vector<double> alpha;
    std::string mode;
    std::string users;
    bool theta_given = false;
    bool alpha_given = false;
};

ExperimentConfig resolve(const Overrides& o)
{
    ExperimentConfig c = o.config.empty() ? ExperimentConfig{} : load_config(o.config);
    if (o.seed) c.seed = *o.seed;
    if (!o.out.empty()) c.output_dir = o.out;
    if (o.theta_given) c.theta_list = o.theta;
    if (!o.mode.empty()) c.mode = parse_search_mode(o.mode);
    if (!o.users.empty()) c.users = fs::path(o.users);
    return c;
}

void require_thetas(const std::vector<double>& thetas)
{
    if (thetas.empty()) throw UsageError("theta list is empty; pass --theta or set theta_list");
    for (std::size_t i = 1; i < thetas.size(); ++i)
        if (!(thetas[i] > thetas[i - 1])) throw UsageError("theta list must be strictly ascending");
}

fs::path prepare_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
    return dir;
}

template <class Fn>
void write_file(const fs::path& path, Fn&& fn)
{
    std::ostringstream buf;
    fn(buf);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << buf.str();
    f.flush();
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

std::uint64_t parse_u64(const std::string& text, const char* flag)
{
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || text.front() == '-')
        throw UsageError(std::string(flag) + " must be an unsigned 64-bit integer");
    return v;
}

std::string hex(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string psd_name(double alpha) { return "psd_alpha" + csv::fixed(alpha, 3) + ".csv"; }

void cmd_psd(const ExperimentConfig& c, const std::vector<double>& alphas, bool dump_iq, std::ostream& out)
{
    if (alphas.empty()) throw UsageError("no roll-off values; pass --alpha or set psd_alphas");
    const auto dir = prepare_dir(c.output_dir);
    const auto settings = c.spectrum_settings();
    for (double a : alphas) {
        const auto psd = windowed_psd(a, c.numerology, settings);
        const auto path = dir / psd_name(a);
        write_file(path, [&](std::ostream& os) { csv::write_psd(os, psd, c.numerology.subcarrier_spacing() / 4.0); });
        out << "wrote " << path.string() << '\n';
        if (dump_iq) {
            const auto win = WindowSpec::from_alpha(a, c.numerology);
            const auto stream =
                generate_stream(c.numerology, win, {settings.n_symbols, settings.seed, settings.oversampling});
            const auto iq = dir / ("stream_alpha" + csv::fixed(a, 3) + ".cf32");
            write_iq_f32(iq, stream);
            out << "wrote " << iq.string() << '\n';
        }
    }
}

void cmd_guards(const ExperimentConfig& c, bool revalidate_rows, std::optional<std::uint64_t> check_seed,
                std::ostream& out, int& status)
{
    require_thetas(c.theta_list);
    const auto settings = c.spectrum_settings();
    const auto grid = GuardBandGrid::compute(c.numerology, c.alpha_grid, c.theta_list, settings);

    std::vector<std::vector<CurvePoint>> curves;
    for (double t : c.theta_list) curves.push_back(efficiency_curve(t, grid));
    const auto table = build_lookup_table(grid);

    const auto dir = prepare_dir(c.output_dir);
    write_file(dir / "guard_curves.csv", [&](std::ostream& os) { csv::write_guard_curves(os, curves, c.theta_list); });
    write_file(dir / "efficiency_curves.csv",
               [&](std::ostream& os) { csv::write_efficiency_curves(os, curves, c.theta_list); });
    write_file(dir / "optimal_guards.csv", [&](std::ostream& os) { csv::write_lookup(os, table, c.numerology); });
    out << "wrote " << (dir / "guard_curves.csv").string() << ", efficiency_curves.csv, optimal_guards.csv\n";
    for (const auto& e : table.entries)
        if (!e.allocation) out << "theta " << e.theta_db << " dB: " << e.failure << '\n';

    if (revalidate_rows) {
        auto check = settings;
        if (check_seed) check.seed = *check_seed;
        const auto rows = revalidate(table, c.numerology, check);
        write_file(dir / "revalidation.csv", [&](std::ostream& os) { csv::write_revalidation(os, rows); });
        out << "wrote " << (dir / "revalidation.csv").string() << '\n';
        for (const auto& r : rows) {
            if (!r.satisfied) {
                status = 3;
                throw std::runtime_error("revalidation failed at theta " + csv::fixed(r.theta_db, 2) + " dB: achieved " +
                                         csv::fixed(r.achieved_suppression_db, 3) + " dB");
            }
        }
    }
}

// Builds the table, or reuses dir/lookup.csv when its key matches the inputs.
LookupTable obtain_lookup(const ExperimentConfig& c, bool force, std::ostream& out)
{
    require_thetas(c.theta_list);
    const auto dir = prepare_dir(c.output_dir);
    const auto settings = c.spectrum_settings();
    const auto key = hex(lookup_key(c.numerology, c.alpha_grid, c.theta_list, settings));
    const auto table_path = dir / "lookup.csv";
    const auto key_path = dir / "lookup.key";

    if (!force && fs::exists(table_path) && fs::exists(key_path)) {
        std::ifstream kf(key_path);
        std::string stored;
        kf >> stored;
        if (stored == key) {
            std::ifstream tf(table_path);
            out << "lookup table up to date (" << key << ")\n";
            return csv::read_lookup(tf);
        }
    }
    const auto table = build_lookup_table(c.theta_list, c.numerology, c.alpha_grid, settings);
    write_file(table_path, [&](std::ostream& os) { csv::write_lookup(os, table, c.numerology); });
    write_file(key_path, [&](std::ostream& os) { os << key << '\n'; });
    out << "wrote " << table_path.string() << " (" << key << ")\n";
    for (const auto& e : table.entries)
        if (!e.allocation) out << "theta " << e.theta_db << " dB: " << e.failure << '\n';
    return table;
}

void cmd_schedule(const ExperimentConfig& c, bool force, std::ostream& out)
{
    if (!c.users) throw UsageError("no user set; pass --users or set users in the config");
    std::ifstream uf(*c.users);
    if (!uf) throw std::runtime_error("cannot read user set " + c.users->string());
    const auto users = csv::read_users(uf);
    if (c.mode == SearchMode::exhaustive && users.size() > max_exhaustive_users)
        throw UsageError("exhaustive mode supports at most " + std::to_string(max_exhaustive_users) +
                         " users; use --mode heuristic");

    const auto table = obtain_lookup(c, force, out);
    const auto rows = compare_scenarios(users, c.seed, table, c.numerology, c.mode, c.fixed_theta_db);

    const auto dir = prepare_dir(c.output_dir);
    for (const auto& r : rows)
        write_file(dir / ("layout_" + r.scenario + ".csv"), [&](std::ostream& os) { csv::write_layout(os, r.plan); });
    write_file(dir / "comparison.csv", [&](std::ostream& os) { csv::write_comparison(os, rows); });
    out << "wrote " << (dir / "comparison.csv").string() << " and " << rows.size() << " layouts\n";
    for (const auto& r : rows)
        out << "  " << r.scenario << ": GD " << r.plan.total_gd_samples << " samples, GB "
            << r.plan.total_gb_subcarriers << " subcarriers\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Adaptive guard band / guard duration optimizer for windowed OFDM", "guardopt"};
    app.require_subcommand(1);

    Overrides o;
    std::string seed_text;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "JSON experiment config")->check(CLI::ExistingFile);
        sub->add_option("--seed", seed_text, "Monte-Carlo / scheduling seed (u64)");
        sub->add_option("--out", o.out, "Output directory");
    };

    bool dump_iq = false;
    bool revalidate_rows = false;
    bool force = false;

    auto* psd = app.add_subcommand("psd", "PSD of windowed-OFDM streams, one CSV per roll-off");
    add_common(psd);
    psd->add_option("--alpha", o.alpha, "Roll-off list, e.g. 0,0.05,0.1")->delimiter(',');
    psd->add_flag("--iq", dump_iq, "Also dump each stream as little-endian float32 I/Q");

    auto* guards = app.add_subcommand("guards", "Required-guard curves, efficiency curves and optimal guards");
    add_common(guards);
    guards->add_option("--theta", o.theta, "Threshold list in dB, ascending")->delimiter(',');
    guards->add_option("--alpha", o.alpha, "Roll-off grid")->delimiter(',');
    std::string check_seed_text;
    guards->add_flag("--revalidate", revalidate_rows, "Regenerate the PSD for every optimal row and re-check theta");
    guards->add_option("--revalidate-seed", check_seed_text, "Re-check on this Monte-Carlo seed instead of --seed");

    auto* lookup = app.add_subcommand("lookup-build", "Build (or reuse) the theta -> guards lookup table");
    add_common(lookup);
    lookup->add_option("--theta", o.theta, "Threshold list in dB, ascending")->delimiter(',');
    lookup->add_option("--alpha", o.alpha, "Roll-off grid")->delimiter(',');
    lookup->add_flag("--force", force, "Rebuild even if the stored key matches");

    auto* schedule = app.add_subcommand("schedule", "Fixed vs adaptive guards, random vs interference-based order");
    add_common(schedule);
    schedule->add_option("--theta", o.theta, "Lookup thresholds in dB, ascending")->delimiter(',');
    schedule->add_option("--alpha", o.alpha, "Roll-off grid")->delimiter(',');
    schedule->add_option("--users", o.users, "User set CSV");
    schedule->add_option("--mode", o.mode, "exhaustive|heuristic")->check(CLI::IsMember({"exhaustive", "heuristic"}));
    schedule->add_flag("--force", force, "Rebuild the lookup table even if the stored key matches");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "guardopt: error: " << e.what() << '\n';
        return 1;
    }

    int status = 0;
    try {
        const CLI::App* active = app.get_subcommands().front();
        auto given = [&](const char* name) {
            const auto* opt = active->get_option_no_throw(name);
            return opt != nullptr && opt->count() > 0;
        };
        o.theta_given = given("--theta");
        o.alpha_given = given("--alpha");
        if (!seed_text.empty()) o.seed = parse_u64(seed_text, "--seed");
        std::optional<std::uint64_t> check_seed;
        if (!check_seed_text.empty()) check_seed = parse_u64(check_seed_text, "--revalidate-seed");
        auto c = resolve(o);

        if (active == psd) {
            cmd_psd(c, o.alpha_given ? o.alpha : c.psd_alphas, dump_iq, out);
        } else {
            if (o.alpha_given) c.alpha_grid = o.alpha;
            if (active == guards)
                cmd_guards(c, revalidate_rows || !check_seed_text.empty(), check_seed, out, status);
            else if (active == lookup)
                obtain_lookup(c, force, out);
            else
                cmd_schedule(c, force, out);
        }
    } catch (const UsageError& e) {
        err << "guardopt: error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "guardopt: error: " << e.what() << '\n';
        return status != 0 ? status : 2;
    }
    return status;
}

}  // namespace guardopt::cli
