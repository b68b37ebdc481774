#pragma once
// CSV emitters and readers for every file the tools exchange. Numbers are written
// in fixed notation with a per-column precision so reruns are byte-identical.

#include "guardopt/guard_optimizer.hpp"
#include "guardopt/scheduler.hpp"
#include "guardopt/spectrum.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace guardopt::csv {

std::string fixed(double v, int precision);

/// Splits one line on commas and trims surrounding blanks.
std::vector<std::string> split_line(const std::string& line);

/// freq_hz,power_db. Bins are power-averaged into cells of `resolution_hz`
/// (at least one native bin); 0 keeps the native grid.
void write_psd(std::ostream& os, const PsdEstimate& psd, double resolution_hz);

/// alpha,gd_samples,gb_subcarriers,theta_db (one block per theta).
void write_guard_curves(std::ostream& os, std::span<const std::vector<CurvePoint>> curves,
                        std::span<const double> thetas_db);

/// theta_db,alpha,gd_samples,gb_subcarriers,eta_time,eta_freq,eta
void write_efficiency_curves(std::ostream& os, std::span<const std::vector<CurvePoint>> curves,
                             std::span<const double> thetas_db);

/// theta_db,alpha,gd_samples,gd_us,gb_subcarriers,gb_hz,eta_time,eta_freq,eta
/// Absent entries keep their theta and carry NA in every other column.
void write_lookup(std::ostream& os, const LookupTable& table, const NumerologyConfig& cfg);
LookupTable read_lookup(std::istream& is);

/// id,power_dbm,sir_req_db,use_case,obw_subcarriers
std::vector<UserProfile> read_users(std::istream& is);
void write_users(std::ostream& os, std::span<const UserProfile> users);

/// band_index,user_id,power_dbm,sir_req_db,theta_db,alpha,gd_samples,gb_subcarriers,boundary_gb_right,eta
void write_layout(std::ostream& os, const SchedulePlan& plan);

/// scenario,total_gd_samples,total_gb_subcarriers,gd_reduction_pct,gb_reduction_pct
void write_comparison(std::ostream& os, std::span<const ScenarioResult> rows);

/// theta_db,achieved_suppression_db,satisfied
void write_revalidation(std::ostream& os, std::span<const RevalidationResult> rows);

}  // namespace guardopt::csv
