#include "guardopt/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace guardopt::csv {

std::string fixed(double v, int precision)
{
    if (std::isnan(v)) return "NA";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[128];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    std::string s(buf, end);
    if (s.find_first_not_of("-0.") == std::string::npos) s.erase(0, s.front() == '-' ? 1 : 0);
    return s;
}

std::vector<std::string> split_line(const std::string& line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        std::string field = line.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
        const auto b = field.find_first_not_of(" \t\r");
        const auto e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

namespace {

double to_double(const std::string& s, const char* what)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument(std::string("bad number for ") + what + ": '" + s + "'");
    return v;
}

int to_int(const std::string& s, const char* what)
{
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument(std::string("bad integer for ") + what + ": '" + s + "'");
    return v;
}

bool skip(const std::string& line)
{
    const auto b = line.find_first_not_of(" \t\r");
    return b == std::string::npos || line[b] == '#';
}

// Reads the header and checks it names exactly the expected columns.
void expect_header(std::istream& is, const std::vector<std::string>& columns, const char* what)
{
    std::string line;
    while (std::getline(is, line)) {
        if (skip(line)) continue;
        if (split_line(line) != columns) throw std::invalid_argument(std::string(what) + ": unexpected header '" + line + "'");
        return;
    }
    throw std::invalid_argument(std::string(what) + ": missing header");
}

void write_curve_point_prefix(std::ostream& os, const CurvePoint& p)
{
    os << fixed(p.alpha, 3) << ',' << p.gd_samples << ',';
}

}  // namespace

void write_psd(std::ostream& os, const PsdEstimate& psd, double resolution_hz)
{
    os << "freq_hz,power_db\n";
    std::size_t group = 1;
    if (resolution_hz > 0.0) group = std::max<std::size_t>(1, static_cast<std::size_t>(resolution_hz / psd.freq_step));
    for (std::size_t i = 0; i + group <= psd.size(); i += group) {
        double sum = 0.0;
        for (std::size_t k = 0; k < group; ++k) sum += psd.power[i + k];
        const double mean = sum / static_cast<double>(group);
        const double f = 0.5 * (psd.freq(i) + psd.freq(i + group - 1));
        const double db = mean > 0.0 ? 10.0 * std::log10(mean) : -400.0;
        os << fixed(f, 3) << ',' << fixed(std::max(db, -400.0), 6) << '\n';
    }
}

void write_guard_curves(std::ostream& os, std::span<const std::vector<CurvePoint>> curves,
                        std::span<const double> thetas_db)
{
    os << "alpha,gd_samples,gb_subcarriers,theta_db\n";
    for (std::size_t t = 0; t < curves.size(); ++t) {
        for (const auto& p : curves[t]) {
            write_curve_point_prefix(os, p);
            os << (p.allocation ? fixed(p.allocation->gb_subcarriers, 4) : std::string("NA")) << ','
               << fixed(thetas_db[t], 2) << '\n';
        }
    }
}

void write_efficiency_curves(std::ostream& os, std::span<const std::vector<CurvePoint>> curves,
                             std::span<const double> thetas_db)
{
    os << "theta_db,alpha,gd_samples,gb_subcarriers,eta_time,eta_freq,eta\n";
    for (std::size_t t = 0; t < curves.size(); ++t) {
        for (const auto& p : curves[t]) {
            os << fixed(thetas_db[t], 2) << ',';
            write_curve_point_prefix(os, p);
            if (p.allocation) {
                const auto& a = *p.allocation;
                os << fixed(a.gb_subcarriers, 4) << ',' << fixed(a.eta_time, 8) << ',' << fixed(a.eta_freq, 8) << ','
                   << fixed(a.eta, 8) << '\n';
            } else {
                os << "NA,NA,NA,NA\n";
            }
        }
    }
}

namespace {

const std::vector<std::string> lookup_columns{"theta_db", "alpha",          "gd_samples", "gd_us",
                                              "gb_subcarriers", "gb_hz", "eta_time",   "eta_freq", "eta"};
const std::vector<std::string> user_columns{"id", "power_dbm", "sir_req_db", "use_case", "obw_subcarriers"};

}  // namespace

void write_lookup(std::ostream& os, const LookupTable& table, const NumerologyConfig& cfg)
{
    for (std::size_t i = 0; i < lookup_columns.size(); ++i) os << (i ? "," : "") << lookup_columns[i];
    os << '\n';
    for (const auto& e : table.entries) {
        os << fixed(e.theta_db, 2) << ',';
        if (!e.allocation) {
            os << "NA,NA,NA,NA,NA,NA,NA,NA\n";
            continue;
        }
        const auto& a = *e.allocation;
        os << fixed(a.alpha, 3) << ',' << a.gd_samples << ',' << fixed(samples_to_duration(a.gd_samples, cfg) * 1e6, 4)
           << ',' << fixed(a.gb_subcarriers, 4) << ',' << fixed(subcarriers_to_bandwidth(a.gb_subcarriers, cfg), 2)
           << ',' << fixed(a.eta_time, 8) << ',' << fixed(a.eta_freq, 8) << ',' << fixed(a.eta, 8) << '\n';
    }
}

LookupTable read_lookup(std::istream& is)
{
    expect_header(is, lookup_columns, "lookup table");
    LookupTable table;
    std::string line;
    while (std::getline(is, line)) {
        if (skip(line)) continue;
        const auto f = split_line(line);
        if (f.size() != lookup_columns.size()) throw std::invalid_argument("lookup table: bad row '" + line + "'");
        LookupEntry e;
        e.theta_db = to_double(f[0], "theta_db");
        if (f[1] == "NA") {
            e.failure = "absent in stored table";
        } else {
            GuardAllocation a;
            a.theta_db = e.theta_db;
            a.alpha = to_double(f[1], "alpha");
            a.gd_samples = to_int(f[2], "gd_samples");
            a.gb_subcarriers = to_double(f[4], "gb_subcarriers");
            a.eta_time = to_double(f[6], "eta_time");
            a.eta_freq = to_double(f[7], "eta_freq");
            a.eta = to_double(f[8], "eta");
            e.allocation = a;
        }
        if (!table.entries.empty() && !(e.theta_db > table.entries.back().theta_db))
            throw std::invalid_argument("lookup table: theta_db must be strictly ascending");
        table.entries.push_back(std::move(e));
    }
    return table;
}

std::vector<UserProfile> read_users(std::istream& is)
{
    expect_header(is, user_columns, "user set");
    std::vector<UserProfile> users;
    std::string line;
    while (std::getline(is, line)) {
        if (skip(line)) continue;
        const auto f = split_line(line);
        if (f.size() != user_columns.size()) throw std::invalid_argument("user set: bad row '" + line + "'");
        UserProfile u;
        u.id = f[0];
        u.power_dbm = to_double(f[1], "power_dbm");
        u.sir_req_db = to_double(f[2], "sir_req_db");
        u.use_case = parse_use_case(f[3]);
        u.obw_subcarriers = to_int(f[4], "obw_subcarriers");
        validate(u);
        users.push_back(std::move(u));
    }
    if (users.empty()) throw std::invalid_argument("user set: no users");
    return users;
}

void write_users(std::ostream& os, std::span<const UserProfile> users)
{
    os << "id,power_dbm,sir_req_db,use_case,obw_subcarriers\n";
    for (const auto& u : users)
        os << u.id << ',' << fixed(u.power_dbm, 2) << ',' << fixed(u.sir_req_db, 2) << ',' << to_string(u.use_case)
           << ',' << u.obw_subcarriers << '\n';
}

void write_layout(std::ostream& os, const SchedulePlan& plan)
{
    os << "band_index,user_id,power_dbm,sir_req_db,theta_db,alpha,gd_samples,gb_subcarriers,boundary_gb_right,eta\n";
    for (std::size_t i = 0; i < plan.assignment.size(); ++i) {
        const auto& u = plan.assignment[i];
        const auto& g = plan.guard_per_band[i];
        os << i << ',' << u.id << ',' << fixed(u.power_dbm, 2) << ',' << fixed(u.sir_req_db, 2) << ','
           << fixed(plan.theta_per_band[i], 2) << ',' << fixed(g.alpha, 3) << ',' << g.gd_samples << ','
           << fixed(g.gb_subcarriers, 4) << ',';
        if (i < plan.boundary_gb.size())
            os << plan.boundary_gb[i];
        else
            os << "NA";
        os << ',' << fixed(plan.eta_per_band[i], 6) << '\n';
    }
}

void write_comparison(std::ostream& os, std::span<const ScenarioResult> rows)
{
    os << "scenario,total_gd_samples,total_gb_subcarriers,gd_reduction_pct,gb_reduction_pct\n";
    for (const auto& r : rows)
        os << r.scenario << ',' << r.plan.total_gd_samples << ',' << r.plan.total_gb_subcarriers << ','
           << fixed(r.gd_reduction_pct, 2) << ',' << fixed(r.gb_reduction_pct, 2) << '\n';
}

void write_revalidation(std::ostream& os, std::span<const RevalidationResult> rows)
{
    os << "theta_db,achieved_suppression_db,satisfied\n";
    for (const auto& r : rows)
        os << fixed(r.theta_db, 2) << ',' << fixed(r.achieved_suppression_db, 4) << ',' << (r.satisfied ? 1 : 0) << '\n';
}

}  // namespace guardopt::csv
