#pragma once

#include "biot3f/biot_solver.hpp"
#include "biot3f/errors.hpp"

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace biot3f {

enum class Sweep {
    Space,  // n = n0, 2 n0, ...; tau from the tau rule at each level
    Time,   // n = n0 fixed; tau = tau_rule(n0), tau/2, tau/4, ...
};

struct StudyConfig {
    std::string case_name = "ex1";
    ElementPair pair = ElementPair::P2P0P1;
    int n0 = 8;
    int levels = 4;
    TauRule tau_rule;
    Sweep sweep = Sweep::Space;
    std::optional<PhysicalParams> params;  // overrides the case defaults
    std::string out_dir;                   // empty: no files written
    int jobs = 1;                          // levels solved concurrently
};

/// Reads `key = value` lines; '#' starts a comment. Unknown keys are rejected.
StudyConfig parse_study_config(std::istream& is);
/// Applies one key/value pair to a config.
void set_config_value(StudyConfig& config, const std::string& key, const std::string& value);

struct ConvergenceRow {
    int n = 0;
    double h = 0.0;    // reported mesh width 1/n
    double tau = 0.0;
    int steps = 0;
    ErrorReport errors;
};

struct ConvergenceReport {
    StudyConfig config;
    PhysicalParams params;
    std::vector<ConvergenceRow> rows;

    /// Observed orders of row `row` (>= 1) against the previous row.
    std::array<std::optional<double>, 5> orders(std::size_t row, bool against_exact = false) const;
};

ConvergenceReport run_study(const StudyConfig& config);

/// Fixed schema h,tau,energy_u,order,l2_u,order,l2_q,order,h1_p,order,l2_p,order.
void write_csv(std::ostream& os, const ConvergenceReport& report, bool against_exact = false);
void write_markdown(std::ostream& os, const ConvergenceReport& report);

/// Writes convergence.csv, convergence_exact.csv and convergence.md into config.out_dir.
void write_report_files(const ConvergenceReport& report);

using OrderBand = std::optional<std::pair<double, double>>;

/// Allowed order intervals keyed by report row (>= 1); empty entries are unchecked.
struct OrderGate {
    std::map<std::size_t, std::array<OrderBand, 5>> rows;
};

/// Built-in acceptance bands for the catalogued studies, if this config is one of them.
std::optional<OrderGate> default_gate(const StudyConfig& config);

/// Human-readable failures of `report` against `gate` (empty when it passes).
std::vector<std::string> check_gate(const ConvergenceReport& report, const OrderGate& gate);

} // namespace biot3f
