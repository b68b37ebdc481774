#include <doctest.h>

#include "guardopt/cli.hpp"
#include "guardopt/csv.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace guardopt;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run guardopt_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "guardopt");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Fresh scratch directory holding a small-numerology config.
struct Scratch {
    fs::path dir;
    fs::path config;

    explicit Scratch(const std::string& name, const std::string& extra = "")
    {
        dir = fs::temp_directory_path() / ("guardopt_cli_" + name);
        fs::remove_all(dir);
        fs::create_directories(dir);
        config = dir / "cfg.json";
        std::ofstream(config) << R"({"n_fft": 128, "n_occupied": 72, "t_cp_ch_samples": 9, "n_symbols": 100, "fixed_theta_db": 40,
            "alpha_grid": [0, 0.05, 0.1], "theta_list": [20, 30, 40], "psd_alphas": [0, 0.1])"
                              << extra << "}";
    }
    ~Scratch() { fs::remove_all(dir); }
    fs::path out(const std::string& sub) const { return dir / sub; }
};

std::vector<std::vector<std::string>> rows(const fs::path& p)
{
    std::ifstream f(p);
    std::string line;
    std::vector<std::vector<std::string>> out;
    std::getline(f, line);
    while (std::getline(f, line)) out.push_back(csv::split_line(line));
    return out;
}

}  // namespace

TEST_CASE("usage errors")
{
    auto r = guardopt_cli({});
    CHECK(r.code == 1);
    CHECK(r.err.rfind("guardopt: error: ", 0) == 0);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

    r = guardopt_cli({"frobnicate"});
    CHECK(r.code == 1);
    r = guardopt_cli({"guards", "--seed", "-3"});
    CHECK(r.code == 1);
    r = guardopt_cli({"schedule", "--mode", "greedy"});
    CHECK(r.code == 1);
    r = guardopt_cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("lookup-build") != std::string::npos);
}

TEST_CASE("empty theta list is a usage error and writes nothing")
{
    Scratch s("empty_theta", R"(, "theta_list": [])");
    const auto out = s.out("o");
    const auto r = guardopt_cli({"guards", "--config", s.config.string(), "--out", out.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("theta") != std::string::npos);
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("psd command: peak in band, ordered sidelobes, deterministic bytes")
{
    Scratch s("psd");
    const auto out = s.out("o");
    auto r = guardopt_cli({"psd", "--config", s.config.string(), "--out", out.string()});
    REQUIRE(r.code == 0);
    const auto a0 = out / "psd_alpha0.000.csv";
    const auto a1 = out / "psd_alpha0.100.csv";
    REQUIRE(fs::exists(a0));
    REQUIRE(fs::exists(a1));

    const double edge = 36.5 * 15e3;
    auto summary = [&](const fs::path& p) {
        double peak_f = 0, peak = -1e9, far = -1e9;
        for (const auto& row : rows(p)) {
            const double f = std::stod(row[0]), db = std::stod(row[1]);
            if (db > peak) peak = db, peak_f = f;
            if (f > edge + 1.08e6 && f < edge + 2.16e6) far = std::max(far, db);
        }
        return std::pair{peak_f, far};
    };
    const auto [f0, far0] = summary(a0);
    const auto [f1, far1] = summary(a1);
    CHECK(std::abs(f0) < edge);
    CHECK(std::abs(f1) < edge);
    CHECK(far1 < far0);

    const auto first = slurp(a0);
    r = guardopt_cli({"psd", "--config", s.config.string(), "--out", out.string(), "--alpha", "0"});
    REQUIRE(r.code == 0);
    CHECK(slurp(a0) == first);
    r = guardopt_cli({"psd", "--config", s.config.string(), "--out", out.string(), "--alpha", "0", "--seed", "2"});
    CHECK(slurp(a0) != first);
}

TEST_CASE("guards command emits curves and a revalidated table")
{
    Scratch s("guards");
    const auto out = s.out("o");
    const auto r = guardopt_cli({"guards", "--config", s.config.string(), "--out", out.string(), "--theta", "20,40",
                                 "--revalidate"});
    INFO(r.err);
    REQUIRE(r.code == 0);
    for (auto name : {"guard_curves.csv", "efficiency_curves.csv", "optimal_guards.csv", "revalidation.csv"})
        CHECK(fs::exists(out / name));
    const auto table = rows(out / "optimal_guards.csv");
    REQUIRE(table.size() == 2);
    CHECK(std::stod(table[0][8]) > std::stod(table[1][8]));
    CHECK(rows(out / "guard_curves.csv").size() == 6);
    for (const auto& row : rows(out / "revalidation.csv")) CHECK(row[2] == "1");
}

TEST_CASE("lookup-build reuses a matching table")
{
    Scratch s("lookup");
    const auto out = s.out("o");
    auto r = guardopt_cli({"lookup-build", "--config", s.config.string(), "--out", out.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("wrote") != std::string::npos);
    const auto bytes = slurp(out / "lookup.csv");

    r = guardopt_cli({"lookup-build", "--config", s.config.string(), "--out", out.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("up to date") != std::string::npos);
    r = guardopt_cli({"lookup-build", "--config", s.config.string(), "--out", out.string(), "--force"});
    CHECK(r.out.find("wrote") != std::string::npos);
    CHECK(slurp(out / "lookup.csv") == bytes);
    r = guardopt_cli({"lookup-build", "--config", s.config.string(), "--out", out.string(), "--theta", "20,30"});
    CHECK(r.out.find("wrote") != std::string::npos);
}

TEST_CASE("schedule command")
{
    Scratch s("schedule");
    const auto out = s.out("o");
    const auto users = s.dir / "same.csv";
    std::ofstream(users) << "id,power_dbm,sir_req_db,use_case,obw_subcarriers\n"
                            "a,20,25,eMBB,72\nb,20,25,eMBB,72\nc,20,25,eMBB,72\nd,20,25,eMBB,72\n";

    auto r = guardopt_cli({"schedule", "--config", s.config.string(), "--out", out.string(), "--users", users.string()});
    INFO(r.err);
    REQUIRE(r.code == 0);
    for (auto name : {"layout_fixed_random.csv", "layout_adaptive_random.csv", "layout_adaptive_interference.csv",
                      "comparison.csv"})
        CHECK(fs::exists(out / name));
    const auto cmp = rows(out / "comparison.csv");
    REQUIRE(cmp.size() == 3);
    CHECK(cmp[2][3] == "0.00");
    CHECK(cmp[2][4] == "0.00");
    CHECK(rows(out / "layout_adaptive_interference.csv").size() == 4);

    const auto first = slurp(out / "comparison.csv");
    r = guardopt_cli({"schedule", "--config", s.config.string(), "--out", out.string(), "--users", users.string()});
    CHECK(slurp(out / "comparison.csv") == first);

    r = guardopt_cli({"schedule", "--config", s.config.string(), "--out", out.string()});
    CHECK(r.code == 1);
    r = guardopt_cli({"schedule", "--config", s.config.string(), "--out", out.string(), "--users",
                      (s.dir / "missing.csv").string()});
    CHECK(r.code == 2);
}

TEST_CASE("heuristic mode never beats exhaustive")
{
    Scratch s("modes");
    const auto users = fs::path(GUARDOPT_DATA_DIR) / "users_8.csv";
    auto total = [&](const std::string& mode) {
        const auto out = s.out(mode);
        const auto r = guardopt_cli({"schedule", "--config", s.config.string(), "--out", out.string(), "--users",
                                     users.string(), "--mode", mode, "--theta", "20,25,30,35,40,45"});
        INFO(r.err);
        REQUIRE(r.code == 0);
        const auto cmp = rows(out / "comparison.csv");
        return std::pair{std::stoll(cmp[2][2]), std::stoll(cmp[2][1])};
    };
    CHECK(total("heuristic") >= total("exhaustive"));
}
