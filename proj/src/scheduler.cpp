#include "guardopt/scheduler.hpp"

#include "guardopt/parallel.hpp"
#include "guardopt/rng.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace guardopt {

std::string_view to_string(UseCase u)
{
    switch (u) {
    case UseCase::eMBB: return "eMBB";
    case UseCase::mMTC: return "mMTC";
    case UseCase::URLLC: return "URLLC";
    }
    return "?";
}

namespace {

std::string lower(std::string_view s)
{
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

UseCase parse_use_case(std::string_view s)
{
    const auto l = lower(s);
    if (l == "embb") return UseCase::eMBB;
    if (l == "mmtc") return UseCase::mMTC;
    if (l == "urllc") return UseCase::URLLC;
    throw std::invalid_argument("unknown use case '" + std::string(s) + "' (expected eMBB, mMTC or URLLC)");
}

std::string_view to_string(SearchMode m)
{
    return m == SearchMode::exhaustive ? "exhaustive" : "heuristic";
}

SearchMode parse_search_mode(std::string_view s)
{
    const auto l = lower(s);
    if (l == "exhaustive") return SearchMode::exhaustive;
    if (l == "heuristic") return SearchMode::heuristic;
    throw std::invalid_argument("unknown search mode '" + std::string(s) + "' (expected exhaustive or heuristic)");
}

void validate(const UserProfile& u)
{
    if (!(u.sir_req_db > 0.0)) throw std::invalid_argument("user " + u.id + ": sir_req_db must be positive");
    if (u.obw_subcarriers <= 0) throw std::invalid_argument("user " + u.id + ": obw_subcarriers must be positive");
    if (!std::isfinite(u.power_dbm)) throw std::invalid_argument("user " + u.id + ": power_dbm must be finite");
}

namespace {

// Suppression user `self` owes to `neighbour`.
double pair_theta(const UserProfile& self, const UserProfile& neighbour)
{
    return neighbour.sir_req_db + (self.power_dbm - neighbour.power_dbm);
}

// Index of the neighbour that sets theta_i (the larger term), or npos at n == 1.
std::size_t binding_neighbour(std::span<const UserProfile> a, std::size_t i)
{
    std::size_t best = static_cast<std::size_t>(-1);
    double best_theta = -INFINITY;
    if (i > 0) {
        best = i - 1;
        best_theta = pair_theta(a[i], a[i - 1]);
    }
    if (i + 1 < a.size() && pair_theta(a[i], a[i + 1]) > best_theta) best = i + 1;
    return best;
}

int gb_requirement(const GuardAllocation& g)
{
    // fractional search results are rounded up to whole subcarriers; the epsilon keeps
    // exact integers from being bumped by representation noise
    return static_cast<int>(std::ceil(g.gb_subcarriers - 1e-9));
}

SchedulePlan finish_plan(std::span<const UserProfile> assignment, std::vector<double> thetas,
                         std::vector<GuardAllocation> guards, const NumerologyConfig& cfg)
{
    SchedulePlan plan;
    plan.assignment.assign(assignment.begin(), assignment.end());
    plan.theta_per_band = std::move(thetas);
    plan.guard_per_band = std::move(guards);

    const std::size_t n = assignment.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const int gb = std::max(gb_requirement(plan.guard_per_band[i]), gb_requirement(plan.guard_per_band[i + 1]));
        plan.boundary_gb.push_back(gb);
        plan.total_gb_subcarriers += gb;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto& g = plan.guard_per_band[i];
        plan.total_gd_samples += g.gd_samples;
        const double left = i > 0 ? plan.boundary_gb[i - 1] : 0.0;
        const double right = i + 1 < n ? plan.boundary_gb[i] : 0.0;
        const double obw = assignment[i].obw_subcarriers;
        const double eta_time = spectral_efficiency(g.gd_samples, 0.0, cfg).eta_time;
        plan.eta_per_band.push_back(eta_time * obw / (obw + 0.5 * left + 0.5 * right));
    }
    return plan;
}

}  // namespace

std::vector<double> theta_for_assignment(std::span<const UserProfile> assignment, double floor_db)
{
    if (assignment.empty()) throw std::invalid_argument("theta_for_assignment: no users");
    if (assignment.size() == 1) return {floor_db};

    std::vector<double> theta(assignment.size());
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        double t = -INFINITY;
        if (i > 0) t = std::max(t, pair_theta(assignment[i], assignment[i - 1]));
        if (i + 1 < assignment.size()) t = std::max(t, pair_theta(assignment[i], assignment[i + 1]));
        theta[i] = t;
    }
    return theta;
}

SchedulePlan allocate_guards(std::span<const UserProfile> assignment, const LookupTable& lookup,
                             const NumerologyConfig& cfg)
{
    for (const auto& u : assignment) validate(u);
    auto thetas = theta_for_assignment(assignment);

    std::vector<GuardAllocation> guards;
    guards.reserve(assignment.size());
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        const auto* e = lookup.ceil(thetas[i]);
        if (e == nullptr) {
            std::ostringstream os;
            os << "theta " << thetas[i] << " dB for user " << assignment[i].id;
            if (const auto j = binding_neighbour(assignment, i); j < assignment.size())
                os << " (next to " << assignment[j].id << ")";
            os << " exceeds the lookup table maximum of " << lookup.max_theta() << " dB";
            throw std::out_of_range(os.str());
        }
        guards.push_back(*e->allocation);
    }
    return finish_plan(assignment, std::move(thetas), std::move(guards), cfg);
}

SchedulePlan allocate_fixed_guards(std::span<const UserProfile> assignment, const GuardAllocation& fixed,
                                   const NumerologyConfig& cfg)
{
    for (const auto& u : assignment) validate(u);
    auto thetas = std::vector<double>(assignment.size(), fixed.theta_db);
    std::vector<GuardAllocation> guards(assignment.size(), fixed);
    return finish_plan(assignment, std::move(thetas), std::move(guards), cfg);
}

std::vector<UserProfile> schedule_random(std::vector<UserProfile> users, std::uint64_t seed)
{
    Rng rng(seed);
    for (std::size_t i = users.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(users[i - 1], users[j]);
    }
    return users;
}

namespace {

// Precomputed per-pair lookup levels so a permutation costs O(n) integer work.
class CostModel {
public:
    CostModel(std::span<const UserProfile> users, const LookupTable& lookup) : n_(users.size())
    {
        for (const auto& e : lookup.entries) {
            if (!e.allocation) continue;
            thetas_.push_back(e.theta_db);
            gd_.push_back(e.allocation->gd_samples);
            gb_.push_back(gb_requirement(*e.allocation));
        }
        if (thetas_.empty()) throw std::invalid_argument("lookup table has no entries");
        level_.resize(n_ * n_, -1);
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b)
                if (a != b) level_[a * n_ + b] = level_of(pair_theta(users[a], users[b]));
        single_level_ = level_of(0.0);
    }

    std::optional<ScheduleCost> cost(std::span<const std::size_t> order) const
    {
        const std::size_t n = order.size();
        if (n == 1) return ScheduleCost{0, gd_[static_cast<std::size_t>(single_level_)]};
        ScheduleCost c;
        int prev_gb = 0;
        for (std::size_t i = 0; i < n; ++i) {
            int lvl = 0;
            for (std::size_t j : {i - 1, i + 1}) {
                if (j >= n) continue;  // i - 1 wraps at the left edge
                const int l = at(order[i], order[j]);
                if (l < 0) return std::nullopt;
                lvl = std::max(lvl, l);
            }
            const int gb = gb_[static_cast<std::size_t>(lvl)];
            c.gd += gd_[static_cast<std::size_t>(lvl)];
            if (i > 0) c.gb += std::max(prev_gb, gb);
            prev_gb = gb;
        }
        return c;
    }

private:
    int at(std::size_t a, std::size_t b) const { return level_[a * n_ + b]; }

    int level_of(double theta) const
    {
        constexpr double eps = 1e-9;
        for (std::size_t k = 0; k < thetas_.size(); ++k)
            if (thetas_[k] + eps >= theta) return static_cast<int>(k);
        return -1;
    }

    std::size_t n_;
    std::vector<double> thetas_;
    std::vector<int> gd_;
    std::vector<int> gb_;
    std::vector<int> level_;
    int single_level_ = 0;
};

struct Candidate {
    std::optional<ScheduleCost> cost;
    std::vector<std::size_t> order;
};

bool better(const Candidate& a, const Candidate& b)
{
    if (!a.cost) return false;
    if (!b.cost) return true;
    if (*a.cost != *b.cost) return *a.cost < *b.cost;
    return a.order < b.order;
}

std::vector<UserProfile> reorder(std::span<const UserProfile> users, std::span<const std::size_t> order)
{
    std::vector<UserProfile> out;
    out.reserve(order.size());
    for (auto i : order) out.push_back(users[i]);
    return out;
}

std::vector<std::size_t> exhaustive_order(std::span<const UserProfile> users, const CostModel& model)
{
    const std::size_t n = users.size();
    std::vector<Candidate> best(n);
    parallel_for(n, [&](std::size_t first) {
        std::vector<std::size_t> order(n);
        order[0] = first;
        std::size_t k = 1;
        for (std::size_t i = 0; i < n; ++i)
            if (i != first) order[k++] = i;
        Candidate local;
        do {
            Candidate c{model.cost(order), {}};
            if (c.cost && (!local.cost || *c.cost < *local.cost)) {
                c.order = order;
                local = std::move(c);
            }
        } while (std::next_permutation(order.begin() + 1, order.end()));
        best[first] = std::move(local);
    });
    std::size_t w = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (better(best[i], best[w])) w = i;
    if (!best[w].cost) throw std::out_of_range("no ordering keeps every user's theta inside the lookup table");
    return best[w].order;
}

std::vector<std::size_t> heuristic_order(std::span<const UserProfile> users, const CostModel& model)
{
    std::vector<std::size_t> order(users.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (users[a].power_dbm != users[b].power_dbm) return users[a].power_dbm < users[b].power_dbm;
        return users[a].sir_req_db < users[b].sir_req_db;
    });

    auto current = model.cost(order);
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t j = 0; j + 1 < order.size(); ++j) {
            std::swap(order[j], order[j + 1]);
            const auto c = model.cost(order);
            if (c && (!current || *c < *current)) {
                current = c;
                improved = true;
            } else {
                std::swap(order[j], order[j + 1]);
            }
        }
    }
    if (!current) throw std::out_of_range("heuristic ordering leaves a theta above the lookup table maximum");
    return order;
}

}  // namespace

ScheduleCost schedule_cost(std::span<const UserProfile> assignment, const LookupTable& lookup)
{
    CostModel model(assignment, lookup);
    std::vector<std::size_t> order(assignment.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto c = model.cost(order);
    if (!c) throw std::out_of_range("a theta in this ordering exceeds the lookup table maximum");
    return *c;
}

std::vector<UserProfile> schedule_interference_based(std::span<const UserProfile> users, SearchMode mode,
                                                     const LookupTable& lookup)
{
    for (const auto& u : users) validate(u);
    if (users.empty()) return {};
    if (mode == SearchMode::exhaustive && users.size() > max_exhaustive_users)
        throw std::invalid_argument("exhaustive search is limited to " + std::to_string(max_exhaustive_users) +
                                    " users (got " + std::to_string(users.size()) + "); use heuristic mode");
    CostModel model(users, lookup);
    const auto order = mode == SearchMode::exhaustive ? exhaustive_order(users, model) : heuristic_order(users, model);
    return reorder(users, order);
}

namespace {

double reduction_pct(long long before, long long after)
{
    if (before == 0) return 0.0;
    return 100.0 * static_cast<double>(before - after) / static_cast<double>(before);
}

}  // namespace

std::vector<ScenarioResult> compare_scenarios(std::span<const UserProfile> users, std::uint64_t seed,
                                              const LookupTable& lookup, const NumerologyConfig& cfg, SearchMode mode,
                                              double fixed_theta_db)
{
    if (users.empty()) throw std::invalid_argument("compare_scenarios: no users");
    const auto* worst = lookup.ceil(fixed_theta_db);
    if (worst == nullptr)
        throw std::out_of_range("lookup table has no entry covering the fixed worst-case theta of " +
                                std::to_string(fixed_theta_db) + " dB");

    const auto random = schedule_random({users.begin(), users.end()}, seed);
    const auto scheduled = schedule_interference_based(users, mode, lookup);

    std::vector<ScenarioResult> rows(3);
    rows[0].scenario = "fixed_random";
    rows[0].plan = allocate_fixed_guards(random, *worst->allocation, cfg);
    rows[1].scenario = "adaptive_random";
    rows[1].plan = allocate_guards(random, lookup, cfg);
    rows[2].scenario = "adaptive_interference";
    rows[2].plan = allocate_guards(scheduled, lookup, cfg);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        rows[k].gd_reduction_pct = reduction_pct(rows[k - 1].plan.total_gd_samples, rows[k].plan.total_gd_samples);
        rows[k].gb_reduction_pct =
            reduction_pct(rows[k - 1].plan.total_gb_subcarriers, rows[k].plan.total_gb_subcarriers);
    }
    return rows;
}

}  // namespace guardopt
