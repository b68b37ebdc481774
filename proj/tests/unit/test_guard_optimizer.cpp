#include <doctest.h>

#include "guardopt/guard_optimizer.hpp"

#include <cmath>

using namespace guardopt;

namespace {

const NumerologyConfig small(128, 72, 15e3, 9);
const SpectrumSettings quick{20, 1, 4, 1, 0.01};

CurvePoint point(double alpha, int gd, std::optional<double> gb)
{
    CurvePoint p;
    p.alpha = alpha;
    p.gd_samples = gd;
    if (gb) {
        const auto e = spectral_efficiency(gd, *gb, NumerologyConfig{});
        p.allocation = GuardAllocation{alpha, gd, *gb, e.eta_time, e.eta_freq, e.eta, 40.0};
    } else {
        p.failure = "unreachable";
    }
    return p;
}

}  // namespace

TEST_CASE("spectral efficiency on hand-computed cases")
{
    const NumerologyConfig c;
    auto e = spectral_efficiency(0, 0.0, c);
    CHECK(e.eta_time == doctest::Approx(1024.0 / 1096.0));
    CHECK(e.eta_freq == 1.0);
    CHECK(e.eta == doctest::Approx(1024.0 / 1096.0));

    e = spectral_efficiency(27, 8.0, c);
    CHECK(e.eta_time == doctest::Approx(1024.0 / 1123.0));
    CHECK(e.eta_freq == doctest::Approx(9e6 / (9e6 + 2 * 8 * 15e3)));
    CHECK(e.eta == doctest::Approx(e.eta_time * e.eta_freq));
}

TEST_CASE("default alpha grid")
{
    const auto g = default_alpha_grid();
    REQUIRE(g.size() == 41);
    CHECK(g.front() == 0.0);
    CHECK(g[7] == doctest::Approx(0.035));
    CHECK(g.back() == doctest::Approx(0.2));
}

TEST_CASE("select_optimum equals a brute-force argmax")
{
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<CurvePoint> curve;
        for (int i = 0; i < 12; ++i) {
            const bool feasible = rng.below(5) != 0;
            const double gb = static_cast<double>(rng.below(40)) / 4.0;
            curve.push_back(point(0.01 * i, static_cast<int>(rng.below(60)), feasible ? std::optional(gb) : std::nullopt));
        }
        // oracle: scan for the largest eta, earliest index on ties
        int best = -1;
        for (int i = 0; i < 12; ++i) {
            if (!curve[i].allocation) continue;
            if (best < 0 || curve[i].allocation->eta > curve[best].allocation->eta) best = i;
        }
        if (best < 0) {
            CHECK_THROWS_AS(select_optimum(40.0, curve), NoFeasibleGuard);
            continue;
        }
        const auto a = select_optimum(40.0, curve);
        CHECK(a.alpha == curve[best].alpha);
        CHECK(a.eta == curve[best].allocation->eta);
    }
}

TEST_CASE("ties go to the smaller roll-off")
{
    std::vector<CurvePoint> curve{point(0.02, 5, 1.0), point(0.01, 5, 1.0), point(0.03, 5, 1.0)};
    CHECK(select_optimum(30.0, curve).alpha == 0.01);
    std::vector<CurvePoint> none{point(0.0, 0, std::nullopt)};
    CHECK_THROWS_AS(select_optimum(30.0, none), NoFeasibleGuard);
    CHECK_THROWS_AS(select_optimum(30.0, std::vector<CurvePoint>{}), NoFeasibleGuard);
}

TEST_CASE("guard grid, curves and optimum on a small numerology")
{
    const std::vector<double> alphas{0.0, 0.02, 0.05, 0.1};
    const std::vector<double> thetas{20.0, 30.0, 40.0};
    const auto grid = GuardBandGrid::compute(small, alphas, thetas, quick);

    for (std::size_t j = 0; j < thetas.size(); ++j) {
        const auto curve = efficiency_curve(thetas[j], grid);
        REQUIRE(curve.size() == alphas.size());
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            CHECK(curve[i].gd_samples == WindowSpec::from_alpha(alphas[i], small).t_cp_win);
            const auto& cell = grid.at(i, j);
            CHECK(curve[i].allocation.has_value() == cell.gb_subcarriers.has_value());
            // every grid cell must match an independent single-point evaluation
            if (cell.gb_subcarriers)
                CHECK(*cell.gb_subcarriers == required_guard_band(alphas[i], thetas[j], small, quick));
        }
        const auto best = optimize_guards(thetas[j], grid);
        for (const auto& p : curve)
            if (p.allocation) CHECK(best.eta >= p.allocation->eta);
    }
    CHECK_THROWS_AS(grid.theta_index(33.0), std::out_of_range);
    CHECK_THROWS_AS(GuardBandGrid::compute(small, {}, thetas, quick), std::invalid_argument);
    CHECK_THROWS_AS(GuardBandGrid::compute(small, alphas, {}, quick), std::invalid_argument);
    CHECK_THROWS_AS(GuardBandGrid::compute(small, {0.9}, thetas, quick), std::invalid_argument);
}

TEST_CASE("lookup table ceiling semantics")
{
    LookupTable t;
    for (double th : {20.0, 30.0, 40.0}) {
        LookupEntry e;
        e.theta_db = th;
        e.allocation = GuardAllocation{th / 1000.0, static_cast<int>(th), th / 10.0, 1, 1, 1, th};
        t.entries.push_back(e);
    }
    CHECK(t.ceil(5.0)->theta_db == 20.0);
    CHECK(t.ceil(20.0)->theta_db == 20.0);
    CHECK(t.ceil(20.0 + 1e-12)->theta_db == 20.0);
    CHECK(t.ceil(20.5)->theta_db == 30.0);
    CHECK(t.ceil(40.0)->theta_db == 40.0);
    CHECK(t.ceil(40.5) == nullptr);
    CHECK(t.max_theta() == 40.0);

    t.entries[1].allocation.reset();  // absent entries are skipped upward, never downward
    CHECK(t.ceil(25.0)->theta_db == 40.0);
}

TEST_CASE("lookup build, key and revalidation")
{
    const std::vector<double> alphas{0.0, 0.05, 0.1};
    const std::vector<double> thetas{20.0, 35.0};
    const auto table = build_lookup_table(thetas, small, alphas, quick);
    REQUIRE(table.entries.size() == 2);
    for (const auto& e : table.entries) REQUIRE(e.allocation.has_value());
    CHECK(table.entries[0].allocation->eta >= table.entries[1].allocation->eta);

    for (const auto& r : revalidate(table, small, quick)) {
        CAPTURE(r.theta_db);
        CHECK(r.satisfied);
        CHECK(r.achieved_suppression_db >= r.theta_db);
    }
    // an entry whose guard band was shrunk must be caught
    auto broken = table;
    broken.entries[1].allocation->gb_subcarriers = std::max(0.0, broken.entries[1].allocation->gb_subcarriers - 1.0);
    broken.entries[1].allocation->alpha = 0.0;
    const auto rows = revalidate(broken, small, quick);
    CHECK(rows[0].satisfied);
    CHECK_FALSE(rows[1].satisfied);

    auto check = quick;
    check.seed = 2;

    const auto k = lookup_key(small, alphas, thetas, quick);
    CHECK(k == lookup_key(small, alphas, thetas, quick));
    CHECK(k != lookup_key(small, alphas, thetas, check));
    CHECK(k != lookup_key(NumerologyConfig{}, alphas, thetas, quick));
    CHECK(k != lookup_key(small, std::vector<double>{0.0, 0.05}, thetas, quick));

    CHECK_THROWS_AS(build_lookup_table(std::vector<double>{35.0, 20.0}, small, alphas, quick), std::invalid_argument);
    CHECK_THROWS_AS(build_lookup_table(std::vector<double>{}, small, alphas, quick), std::invalid_argument);
}

TEST_CASE("heavy roll-off meets a loose threshold without a guard band")
{
    // alpha = 1 does not fit the default numerology (t_cp_ch + L must stay below n_fft)
    const NumerologyConfig cfg;
    CHECK_THROWS_AS(required_guard_band(1.0, 5.0, cfg), std::invalid_argument);
    CHECK(required_guard_band(0.5, 5.0, cfg) == 0.0);
}
