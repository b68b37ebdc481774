#pragma once
// Band assignment of asynchronous users, per-band interference thresholds and
// adaptive guard allocation from the lookup table.

#include "guardopt/guard_optimizer.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace guardopt {

enum class UseCase { eMBB, mMTC, URLLC };

std::string_view to_string(UseCase u);
/// Case-insensitive; throws std::invalid_argument for unknown tags.
UseCase parse_use_case(std::string_view s);

struct UserProfile {
    std::string id;
    double power_dbm = 0.0;
    double sir_req_db = 0.0;
    UseCase use_case = UseCase::eMBB;
    int obw_subcarriers = 0;

    bool operator==(const UserProfile&) const = default;
};

/// Throws std::invalid_argument unless sir_req_db > 0 and obw_subcarriers > 0.
void validate(const UserProfile& u);

/// theta_i = max over existing neighbours j of (sir_req(j) + power(i) - power(j)).
/// A single user has no neighbour and gets `floor_db`. Throws on empty input.
std::vector<double> theta_for_assignment(std::span<const UserProfile> assignment, double floor_db = 0.0);

struct SchedulePlan {
    std::vector<UserProfile> assignment;
    std::vector<double> theta_per_band;
    std::vector<GuardAllocation> guard_per_band;
    std::vector<int> boundary_gb;  // subcarriers at each internal boundary
    std::vector<double> eta_per_band;  // each user charged half of each adjacent boundary
    long long total_gd_samples = 0;
    long long total_gb_subcarriers = 0;
};

/// Adaptive guards: each user's theta is rounded up to the next table entry; a
/// boundary carries the larger (integer-rounded) guard band of its two users.
/// Throws std::out_of_range naming the offending pair if a theta exceeds the table.
SchedulePlan allocate_guards(std::span<const UserProfile> assignment, const LookupTable& lookup,
                             const NumerologyConfig& cfg);

/// Every user gets the same allocation regardless of its neighbours.
SchedulePlan allocate_fixed_guards(std::span<const UserProfile> assignment, const GuardAllocation& fixed,
                                   const NumerologyConfig& cfg);

/// Uniform random permutation (Fisher-Yates on mt19937_64).
std::vector<UserProfile> schedule_random(std::vector<UserProfile> users, std::uint64_t seed);

enum class SearchMode { exhaustive, heuristic };

std::string_view to_string(SearchMode m);
SearchMode parse_search_mode(std::string_view s);

inline constexpr std::size_t max_exhaustive_users = 10;

/// Ordering that minimizes (total GB, total GD) lexicographically.
/// exhaustive: every permutation (n <= 10), ties resolved to the lexicographically
/// smallest index order. heuristic: sort by power then SIR requirement, then repeat
/// adjacent-swap passes while a swap lowers the cost.
/// Throws std::invalid_argument for exhaustive with n > 10, std::out_of_range if no
/// ordering keeps every theta inside the table.
std::vector<UserProfile> schedule_interference_based(std::span<const UserProfile> users, SearchMode mode,
                                                     const LookupTable& lookup);

struct ScheduleCost {
    long long gb = 0;
    long long gd = 0;
    auto operator<=>(const ScheduleCost&) const = default;
};

/// Cost of an ordering without building the plan; matches allocate_guards totals.
ScheduleCost schedule_cost(std::span<const UserProfile> assignment, const LookupTable& lookup);

struct ScenarioResult {
    std::string scenario;
    SchedulePlan plan;
    double gd_reduction_pct = 0.0;  // vs the previous scenario
    double gb_reduction_pct = 0.0;
};

/// (a) fixed worst-case guards + random order, (b) adaptive + the same random order,
/// (c) adaptive + interference-based order.
std::vector<ScenarioResult> compare_scenarios(std::span<const UserProfile> users, std::uint64_t seed,
                                              const LookupTable& lookup, const NumerologyConfig& cfg,
                                              SearchMode mode = SearchMode::exhaustive,
                                              double fixed_theta_db = 45.0);

}  // namespace guardopt
