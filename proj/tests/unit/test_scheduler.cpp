#include <doctest.h>

#include "guardopt/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

using namespace guardopt;

namespace {

UserProfile user(std::string id, double p, double sir, UseCase uc = UseCase::eMBB)
{
    return UserProfile{std::move(id), p, sir, uc, 600};
}

// Shaped like the default-numerology table: low thresholds need no guards at all.
LookupTable synthetic_table()
{
    LookupTable t;
    const struct {
        double theta;
        int gd;
        double gb;
    } rows[] = {{20, 0, 0.0}, {25, 0, 0.0}, {30, 0, 0.0}, {35, 5, 0.78}, {40, 11, 4.74}, {45, 27, 7.79}};
    const NumerologyConfig c;
    for (const auto& r : rows) {
        LookupEntry e;
        e.theta_db = r.theta;
        const auto eff = spectral_efficiency(r.gd, r.gb, c);
        e.allocation = GuardAllocation{r.gd / 1096.0, r.gd, r.gb, eff.eta_time, eff.eta_freq, eff.eta, r.theta};
        t.entries.push_back(e);
    }
    return t;
}

// Independent cost: per-user lookup by linear scan, boundary max, summed.
ScheduleCost brute_cost(const std::vector<UserProfile>& order, const LookupTable& t)
{
    const auto theta = theta_for_assignment(order);
    std::vector<int> gd, gb;
    for (double th : theta) {
        const LookupEntry* hit = nullptr;
        for (const auto& e : t.entries)
            if (e.theta_db >= th - 1e-9) {
                hit = &e;
                break;
            }
        REQUIRE(hit != nullptr);
        gd.push_back(hit->allocation->gd_samples);
        gb.push_back(static_cast<int>(std::ceil(hit->allocation->gb_subcarriers - 1e-9)));
    }
    ScheduleCost c;
    for (std::size_t i = 0; i < order.size(); ++i) c.gd += gd[i];
    for (std::size_t i = 0; i + 1 < order.size(); ++i) c.gb += std::max(gb[i], gb[i + 1]);
    return c;
}

std::optional<ScheduleCost> brute_min(std::vector<UserProfile> users, const LookupTable& t)
{
    std::vector<std::size_t> idx(users.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::optional<ScheduleCost> best;
    do {
        std::vector<UserProfile> order;
        for (auto i : idx) order.push_back(users[i]);
        const auto th = theta_for_assignment(order);
        if (*std::max_element(th.begin(), th.end()) > t.max_theta() + 1e-9) continue;
        const auto c = brute_cost(order, t);
        if (!best || c < *best) best = c;
    } while (std::next_permutation(idx.begin(), idx.end()));
    return best;
}

const std::vector<UserProfile> mixed{
    user("e1", 30, 20), user("e2", 30, 22), user("e3", 28, 20), user("u1", 20, 30, UseCase::URLLC),
    user("u2", 20, 28, UseCase::URLLC), user("m1", 10, 18, UseCase::mMTC), user("m2", 10, 16, UseCase::mMTC),
    user("m3", 12, 18, UseCase::mMTC)};

}  // namespace

TEST_CASE("theta vectors on hand-computed layouts")
{
    // equal power, requirements 20 and 30: each user protects the other
    CHECK(theta_for_assignment(std::vector{user("a", 0, 20), user("b", 0, 30)}) == std::vector<double>{30, 20});
    // 15 dB hotter than its only neighbour, which needs 25 dB
    CHECK(theta_for_assignment(std::vector{user("a", 15, 10), user("b", 0, 25)}) == std::vector<double>{40, -5});
    // four users, hand evaluation:
    //   band0 (P23,S20): right 18+23-10=31
    //   band1 (P10,S18): left 20+10-23=7, right 25+10-26=9      -> 9
    //   band2 (P26,S25): left 18+26-10=34, right 12+26-12=26    -> 34
    //   band3 (P12,S12): left 25+12-26=11
    const std::vector four{user("a", 23, 20), user("b", 10, 18), user("c", 26, 25), user("d", 12, 12)};
    CHECK(theta_for_assignment(four) == std::vector<double>{31, 9, 34, 11});
    // single user: floor
    CHECK(theta_for_assignment(std::vector{user("a", 23, 20)}, 20.0) == std::vector<double>{20.0});
    CHECK_THROWS_AS(theta_for_assignment(std::vector<UserProfile>{}), std::invalid_argument);
}

TEST_CASE("editing one band changes theta only in its neighbourhood")
{
    Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        auto order = schedule_random(mixed, static_cast<std::uint64_t>(trial));
        const auto before = theta_for_assignment(order);
        const auto j = static_cast<std::size_t>(rng.below(order.size()));
        order[j].power_dbm += 3.0 + static_cast<double>(rng.below(10));
        order[j].sir_req_db += 1.0;
        const auto after = theta_for_assignment(order);
        for (std::size_t i = 0; i < order.size(); ++i) {
            const bool near = i + 1 >= j && i <= j + 1;
            if (!near) CHECK(after[i] == before[i]);
        }
    }
}

TEST_CASE("guard allocation matches an independent recomputation")
{
    const auto t = synthetic_table();
    const NumerologyConfig c;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto order = schedule_random(mixed, seed);
        const auto plan = allocate_guards(order, t, c);
        const auto ref = brute_cost(order, t);
        CHECK(plan.total_gb_subcarriers == ref.gb);
        CHECK(plan.total_gd_samples == ref.gd);
        CHECK(schedule_cost(order, t) == ref);
        REQUIRE(plan.theta_per_band.size() == order.size());
        REQUIRE(plan.boundary_gb.size() + 1 == order.size());
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            CHECK(plan.boundary_gb[i] >= plan.guard_per_band[i].gb_subcarriers);
            CHECK(plan.boundary_gb[i] >= plan.guard_per_band[i + 1].gb_subcarriers);
        }
        for (double eta : plan.eta_per_band) CHECK(eta <= 1024.0 / 1096.0 + 1e-12);
    }
}

TEST_CASE("per-user efficiency charges half of each adjacent boundary")
{
    const auto t = synthetic_table();
    const std::vector order{user("a", 30, 20), user("b", 20, 30), user("c", 20, 30)};
    const auto plan = allocate_guards(order, t, NumerologyConfig{});
    // theta: a=40 (gd 11, gb 5), b=max(0, 30)=30, c=30
    REQUIRE(plan.boundary_gb == std::vector<int>{5, 0});
    const double eta_time_a = 1024.0 / (1096.0 + 11.0);
    CHECK(plan.eta_per_band[0] == doctest::Approx(eta_time_a * 600.0 / 602.5));
    CHECK(plan.eta_per_band[1] == doctest::Approx(1024.0 / 1096.0 * 600.0 / 602.5));
    CHECK(plan.eta_per_band[2] == doctest::Approx(1024.0 / 1096.0));
}

TEST_CASE("thresholds above the table are reported with the binding pair")
{
    const auto t = synthetic_table();
    const std::vector order{user("loud", 40, 20), user("quiet", 10, 25)};  // 25 + 30 = 55 dB
    try {
        allocate_guards(order, t, NumerologyConfig{});
        FAIL("expected out_of_range");
    } catch (const std::out_of_range& e) {
        const std::string msg = e.what();
        CHECK(msg.find("loud") != std::string::npos);
        CHECK(msg.find("quiet") != std::string::npos);
    }
}

TEST_CASE("identical users get uniform guards")
{
    const std::vector<UserProfile> same(5, user("x", 20, 35));
    const auto plan = allocate_guards(same, synthetic_table(), NumerologyConfig{});
    for (double th : plan.theta_per_band) CHECK(th == 35.0);
    for (const auto& g : plan.guard_per_band) CHECK(g.gd_samples == 5);
    for (int gb : plan.boundary_gb) CHECK(gb == 1);
}

TEST_CASE("one loud user raises its neighbours' thresholds by the power offset")
{
    std::vector<UserProfile> row(5, user("q", 10, 20));
    const auto base = theta_for_assignment(row);
    row[2].power_dbm = 22;
    const auto th = theta_for_assignment(row);
    CHECK(th[2] == base[2] + 12.0);
    CHECK(th[1] == base[1]);  // neighbours protect the loud user less, not more
    CHECK(th[0] == base[0]);
}

TEST_CASE("random scheduling is seeded and uniform")
{
    CHECK(schedule_random(mixed, 9) == schedule_random(mixed, 9));
    CHECK(schedule_random(std::vector{user("a", 1, 1)}, 3)[0].id == "a");

    const std::size_t n = 8, trials = 10000;
    std::vector<std::vector<int>> counts(n, std::vector<int>(n, 0));
    for (std::uint64_t s = 0; s < trials; ++s) {
        const auto p = schedule_random(mixed, s);
        for (std::size_t pos = 0; pos < n; ++pos) {
            const auto who = std::find_if(mixed.begin(), mixed.end(), [&](const auto& u) { return u.id == p[pos].id; });
            counts[pos][static_cast<std::size_t>(who - mixed.begin())]++;
        }
    }
    const double expect = static_cast<double>(trials) / n;
    for (std::size_t pos = 0; pos < n; ++pos) {
        double chi2 = 0.0;
        for (std::size_t u = 0; u < n; ++u) chi2 += (counts[pos][u] - expect) * (counts[pos][u] - expect) / expect;
        // 7 degrees of freedom at 0.05 / 8 per position: 5% family-wise over the 8 positions
        CHECK(chi2 < 19.70);
    }
}

TEST_CASE("exhaustive search finds the enumerated optimum")
{
    const auto t = synthetic_table();
    for (std::size_t n : {3u, 5u, 6u, 8u}) {
        CAPTURE(n);
        const std::vector<UserProfile> users(mixed.begin(), mixed.begin() + static_cast<std::ptrdiff_t>(n));
        const auto best = brute_min(users, t);
        REQUIRE(best.has_value());
        const auto order = schedule_interference_based(users, SearchMode::exhaustive, t);
        CHECK(schedule_cost(order, t) == *best);
        CHECK(std::is_permutation(order.begin(), order.end(), users.begin(), users.end()));
        const auto h = schedule_interference_based(users, SearchMode::heuristic, t);
        CHECK(schedule_cost(h, t) >= *best);
    }
}

TEST_CASE("heuristic leaves power-sorted uniform users alone")
{
    const std::vector users{user("a", 5, 20), user("b", 10, 20), user("c", 15, 20), user("d", 20, 20)};
    const auto out = schedule_interference_based(users, SearchMode::heuristic, synthetic_table());
    CHECK(out == users);
}

TEST_CASE("grouping: two power classes with uniform SIR never interleave")
{
    const auto t = synthetic_table();
    for (std::size_t n_hi = 1; n_hi <= 4; ++n_hi) {
        std::vector<UserProfile> users;
        for (std::size_t k = 0; k < 8 - n_hi; ++k) users.push_back(user("lo" + std::to_string(k), 10, 25));
        for (std::size_t k = 0; k < n_hi; ++k) users.push_back(user("hi" + std::to_string(k), 22, 25));
        // alternate so the input itself is interleaved
        std::vector<UserProfile> shuffled = schedule_random(users, n_hi);
        const auto order = schedule_interference_based(shuffled, SearchMode::exhaustive, t);
        int changes = 0;
        for (std::size_t i = 0; i + 1 < order.size(); ++i)
            changes += order[i].power_dbm != order[i + 1].power_dbm ? 1 : 0;
        CHECK(changes == 1);
    }
}

TEST_CASE("adaptive guards never exceed the worst-case fixed guards")
{
    const auto t = synthetic_table();
    const NumerologyConfig c;
    const auto& worst = *t.ceil(45.0)->allocation;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto order = schedule_random(mixed, seed);
        const auto a = allocate_guards(order, t, c);
        const auto f = allocate_fixed_guards(order, worst, c);
        for (std::size_t i = 0; i < order.size(); ++i) CHECK(a.guard_per_band[i].gd_samples <= f.guard_per_band[i].gd_samples);
        for (std::size_t i = 0; i + 1 < order.size(); ++i) CHECK(a.boundary_gb[i] <= f.boundary_gb[i]);
    }
}

TEST_CASE("scenario comparison")
{
    const auto t = synthetic_table();
    const NumerologyConfig c;
    const auto rows = compare_scenarios(mixed, 1, t, c);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].scenario == "fixed_random");
    CHECK(rows[1].scenario == "adaptive_random");
    CHECK(rows[2].scenario == "adaptive_interference");
    CHECK(rows[0].plan.assignment == rows[1].plan.assignment);
    CHECK(rows[0].plan.total_gd_samples == 8 * 27);
    CHECK(rows[0].plan.total_gb_subcarriers == 7 * 8);
    const double gd = 100.0 * (rows[0].plan.total_gd_samples - rows[1].plan.total_gd_samples) / rows[0].plan.total_gd_samples;
    CHECK(rows[1].gd_reduction_pct == doctest::Approx(gd));
    CHECK(rows[1].gd_reduction_pct >= 0.0);
    CHECK(rows[1].gb_reduction_pct >= 0.0);
    CHECK(rows[2].gd_reduction_pct >= 0.0);

    const std::vector<UserProfile> same(6, user("x", 20, 33));
    const auto sym = compare_scenarios(same, 5, t, c);
    CHECK(sym[2].plan.total_gd_samples == sym[1].plan.total_gd_samples);
    CHECK(sym[2].plan.total_gb_subcarriers == sym[1].plan.total_gb_subcarriers);
    CHECK(sym[2].gd_reduction_pct == 0.0);
    CHECK(sym[2].gb_reduction_pct == 0.0);
}

TEST_CASE("input validation")
{
    const auto t = synthetic_table();
    std::vector<UserProfile> many(11, user("x", 10, 20));
    CHECK_THROWS_AS(schedule_interference_based(many, SearchMode::exhaustive, t), std::invalid_argument);
    CHECK_NOTHROW(schedule_interference_based(many, SearchMode::heuristic, t));
    CHECK_THROWS_AS(validate(user("x", 10, 0)), std::invalid_argument);
    auto bad = user("x", 10, 10);
    bad.obw_subcarriers = 0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    CHECK(parse_use_case("urllc") == UseCase::URLLC);
    CHECK(to_string(UseCase::mMTC) == "mMTC");
    CHECK_THROWS_AS(parse_use_case("v2x"), std::invalid_argument);
    CHECK(parse_search_mode("heuristic") == SearchMode::heuristic);
    CHECK_THROWS_AS(parse_search_mode("greedy"), std::invalid_argument);
    CHECK_THROWS_AS(compare_scenarios(std::vector<UserProfile>{}, 1, t, NumerologyConfig{}), std::invalid_argument);
}
