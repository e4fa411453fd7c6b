#include "biot3f/study.hpp"

#include "biot3f/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace biot3f {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

int parse_int(const std::string& key, const std::string& value)
{
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    BIOT3F_THROW_IF(used != value.size() || value.empty(), InvalidArgument,
                    "config: '" + key + "' expects an integer, got '" + value + "'");
    return v;
}

double parse_double(const std::string& key, const std::string& value)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    BIOT3F_THROW_IF(used != value.size() || value.empty(), InvalidArgument,
                    "config: '" + key + "' expects a number, got '" + value + "'");
    return v;
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4e", v);
    return buf;
}

std::string fixed4(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string general(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

ConvergenceRow solve_level(const ManufacturedCase& mc, ElementPair pair, int n, double tau)
{
    const RunResult r = run(mc, pair, n, tau);
    return ConvergenceRow{n, 1.0 / n, r.grid.tau, r.grid.steps, compute_errors(r.final_state, mc, r.spaces)};
}

} // namespace

void set_config_value(StudyConfig& c, const std::string& key, const std::string& value)
{
    if (key == "case") {
        c.case_name = value;
    } else if (key == "elements") {
        c.pair = parse_element_pair(value);
    } else if (key == "n0") {
        c.n0 = parse_int(key, value);
    } else if (key == "levels") {
        c.levels = parse_int(key, value);
    } else if (key == "tau_rule" || key == "tau-rule") {
        c.tau_rule = parse_tau_rule(value);
    } else if (key == "sweep") {
        BIOT3F_THROW_IF(value != "space" && value != "time", InvalidArgument,
                        "config: sweep must be 'space' or 'time'");
        c.sweep = value == "space" ? Sweep::Space : Sweep::Time;
    } else if (key == "out") {
        c.out_dir = value;
    } else if (key == "jobs") {
        c.jobs = parse_int(key, value);
    } else if (key == "mu" || key == "lambda" || key == "kappa") {
        if (!c.params) c.params = get_case(c.case_name).params;
        const double v = parse_double(key, value);
        if (key == "mu") c.params->mu = v;
        if (key == "lambda") c.params->lambda = v;
        if (key == "kappa") c.params->kappa = v;
    } else {
        throw InvalidArgument("config: unknown key '" + key + "'");
    }
}

StudyConfig parse_study_config(std::istream& is)
{
    StudyConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        BIOT3F_THROW_IF(eq == std::string::npos, InvalidArgument,
                        "config line " + std::to_string(lineno) + ": expected key = value");
        set_config_value(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return c;
}

std::array<std::optional<double>, 5> ConvergenceReport::orders(std::size_t row, bool against_exact) const
{
    std::array<std::optional<double>, 5> out;
    if (row == 0 || row >= rows.size()) return out;
    const auto& coarse = against_exact ? rows[row - 1].errors.exact : rows[row - 1].errors.interpolant;
    const auto& fine = against_exact ? rows[row].errors.exact : rows[row].errors.interpolant;
    const auto c = coarse.as_array();
    const auto f = fine.as_array();
    for (std::size_t k = 0; k < 5; ++k) out[k] = observed_order(c[k], f[k]);
    return out;
}

ConvergenceReport run_study(const StudyConfig& config)
{
    BIOT3F_THROW_IF(config.n0 < 1, InvalidArgument, "run_study: n0 must be >= 1");
    BIOT3F_THROW_IF(config.levels < 1, InvalidArgument, "run_study: levels must be >= 1");
    BIOT3F_THROW_IF(config.jobs < 1, InvalidArgument, "run_study: jobs must be >= 1");
    const ManufacturedCase mc = get_case(config.case_name, config.params);

    auto solve = [&](int k) {
        try {
            if (config.sweep == Sweep::Space) {
                const int n = config.n0 << k;
                const RunResult r = run(mc, config.pair, n, config.tau_rule);
                return ConvergenceRow{n, 1.0 / n, r.grid.tau, r.grid.steps,
                                      compute_errors(r.final_state, mc, r.spaces)};
            }
            return solve_level(mc, config.pair, config.n0, config.tau_rule.tau_for(config.n0) / std::pow(2.0, k));
        } catch (const Error& e) {
            throw Error("study level " + std::to_string(k) + ": " + e.what());
        }
    };

    ConvergenceReport report{config, mc.params, std::vector<ConvergenceRow>(static_cast<std::size_t>(config.levels))};
    if (config.jobs == 1) {
        for (int k = 0; k < config.levels; ++k) report.rows[k] = solve(k);
        return report;
    }
    // Levels are independent; results land in their own slot so the merge order is fixed.
    for (int first = 0; first < config.levels; first += config.jobs) {
        std::vector<std::future<ConvergenceRow>> batch;
        const int last = std::min(config.levels, first + config.jobs);
        for (int k = first; k < last; ++k) batch.push_back(std::async(std::launch::async, solve, k));
        for (int k = first; k < last; ++k) report.rows[k] = batch[static_cast<std::size_t>(k - first)].get();
    }
    return report;
}

void write_csv(std::ostream& os, const ConvergenceReport& report, bool against_exact)
{
    os << "h,tau,energy_u,order,l2_u,order,l2_q,order,h1_p,order,l2_p,order\n";
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
        const auto& row = report.rows[r];
        const auto errs = (against_exact ? row.errors.exact : row.errors.interpolant).as_array();
        const auto ord = report.orders(r, against_exact);
        os << general(row.h) << ',' << general(row.tau);
        for (std::size_t k = 0; k < 5; ++k) {
            os << ',' << sci(errs[k]) << ',';
            if (ord[k]) os << fixed4(*ord[k]);
        }
        os << '\n';
    }
}

void write_markdown(std::ostream& os, const ConvergenceReport& report)
{
    const auto& c = report.config;
    os << "# Convergence study: " << c.case_name << ", " << to_string(c.pair) << "\n\n";
    os << "- sweep: " << (c.sweep == Sweep::Space ? "space" : "time") << "\n";
    os << "- tau rule: " << c.tau_rule.to_string() << "\n";
    os << "- mu = " << general(report.params.mu) << ", lambda = " << general(report.params.lambda)
       << ", kappa = " << general(report.params.kappa) << "\n";
    os << "- errors measured against nodal interpolants at the final time\n\n";

    const char* first = c.sweep == Sweep::Space ? "h" : "tau";
    os << "| " << first << " | |||e_u||| | order | ||e_u|| | order | ||e_q|| | order | ||grad e_p|| | order | ||e_p|| | order |\n";
    os << "|---|---|---|---|---|---|---|---|---|---|---|\n";
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
        const auto& row = report.rows[r];
        const auto errs = row.errors.interpolant.as_array();
        const auto ord = report.orders(r);
        if (c.sweep == Sweep::Space) {
            os << "| 1/" << row.n;
        } else {
            os << "| " << general(row.tau);
        }
        for (std::size_t k = 0; k < 5; ++k) {
            os << " | " << sci(errs[k]) << " | " << (ord[k] ? fixed4(*ord[k]) : std::string());
        }
        os << " |\n";
    }
}

void write_report_files(const ConvergenceReport& report)
{
    const std::filesystem::path dir(report.config.out_dir);
    BIOT3F_THROW_IF(dir.empty(), InvalidArgument, "write_report_files: no output directory configured");
    std::filesystem::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream os(dir / name);
        BIOT3F_THROW_IF(!os, Error, "write_report_files: cannot open " + (dir / name).string());
        return os;
    };
    {
        auto os = open("convergence.csv");
        write_csv(os, report);
    }
    {
        auto os = open("convergence_exact.csv");
        write_csv(os, report, true);
    }
    {
        auto os = open("convergence.md");
        write_markdown(os, report);
    }
}

namespace {

OrderBand around(double target, double tol)
{
    return std::make_pair(target - tol, target + tol);
}

OrderBand at_least(double lo)
{
    return std::make_pair(lo, std::numeric_limits<double>::infinity());
}

} // namespace

std::optional<OrderGate> default_gate(const StudyConfig& c)
{
    const bool p0 = c.pair == ElementPair::P2P0P1;
    const bool standard_space = c.sweep == Sweep::Space && c.n0 == 8 && c.levels == 4;
    OrderGate gate;
    const std::size_t finest = 3;

    if (standard_space && c.tau_rule.kind == TauRule::Kind::HSquared && (c.case_name == "ex1" || c.case_name == "ex2")) {
        OrderBand energy = p0 ? around(1.0, 0.15) : at_least(1.85);
        if (c.case_name == "ex2") energy = p0 ? around(1.0149, 0.15) : around(2.2009, 0.3);
        gate.rows[finest] = {energy, around(2.0, 0.15), around(2.0, 0.15), around(2.0, 0.15), around(2.0, 0.15)};
        return gate;
    }
    if (standard_space && c.tau_rule.kind == TauRule::Kind::H && c.case_name == "ex3") {
        if (p0) {
            gate.rows[finest] = {around(1.0, 0.2), around(2.0, 0.2), std::make_pair(1.6, 2.1), around(2.0, 0.2),
                                 around(2.0, 0.2)};
        } else {
            gate.rows[finest] = {around(3.0, 0.2), around(4.0, 0.2), around(2.0, 0.2), around(2.0, 0.2),
                                 around(2.0, 0.2)};
        }
        return gate;
    }
    if (standard_space && c.tau_rule.kind == TauRule::Kind::H && c.case_name == "ex4") {
        if (p0) {
            gate.rows[finest] = {around(0.9725, 0.25), around(1.9436, 0.25), around(1.75, 0.25), around(2.0, 0.25),
                                 around(2.0, 0.25)};
        } else {
            gate.rows[finest] = {around(2.9733, 0.25), around(3.9783, 0.25), around(2.0, 0.25), around(2.0100, 0.25),
                                 around(2.0091, 0.25)};
        }
        return gate;
    }
    const bool standard_time = c.sweep == Sweep::Time && c.n0 == 64 && c.levels == 4
                               && c.tau_rule.kind == TauRule::Kind::Fixed && c.tau_rule.value == 1.0;
    if (standard_time && c.case_name == "ex1") {
        for (std::size_t r = 1; r <= 3; ++r) {
            gate.rows[r] = {around(1.0, 0.1), around(1.0, 0.1), around(1.0, 0.1), around(1.0, 0.1), around(1.0, 0.1)};
        }
        // The P0 energy error reaches its O(h) spatial floor, so its temporal order saturates.
        if (p0) {
            gate.rows[2][0] = std::make_pair(0.5, 1.1);
            gate.rows[3][0] = std::make_pair(0.5, 1.0);
        }
        return gate;
    }
    return std::nullopt;
}

std::vector<std::string> check_gate(const ConvergenceReport& report, const OrderGate& gate)
{
    std::vector<std::string> failures;
    for (const auto& [row, bands] : gate.rows) {
        if (row >= report.rows.size()) {
            failures.push_back("row " + std::to_string(row) + " missing from report");
            continue;
        }
        const auto ord = report.orders(row);
        for (std::size_t k = 0; k < 5; ++k) {
            if (!bands[k]) continue;
            const auto [lo, hi] = *bands[k];
            if (!ord[k] || *ord[k] < lo || *ord[k] > hi) {
                std::ostringstream os;
                os << "row " << row << " " << norm_names[k] << ": order "
                   << (ord[k] ? fixed4(*ord[k]) : std::string("undefined")) << " outside [" << lo << ", " << hi << "]";
                failures.push_back(os.str());
            }
        }
    }
    return failures;
}

} // namespace biot3f
