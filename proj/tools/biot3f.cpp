#include "biot3f/biot_solver.hpp"
#include "biot3f/error.hpp"
#include "biot3f/infsup.hpp"
#include "biot3f/study.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

using namespace biot3f;

struct StudyArgs {
    std::string config_file;
    std::string case_name;
    std::string elements;
    int n0 = 0;
    int levels = 0;
    std::string tau_rule;
    std::string sweep;
    std::string out;
    int jobs = 0;
    bool check = false;
};

int run_study_command(const StudyArgs& a)
{
    StudyConfig config;
    if (!a.config_file.empty()) {
        std::ifstream is(a.config_file);
        if (!is) throw InvalidArgument("cannot open config file " + a.config_file);
        config = parse_study_config(is);
    }
    // Command-line flags override the config file.
    if (!a.case_name.empty()) set_config_value(config, "case", a.case_name);
    if (!a.elements.empty()) set_config_value(config, "elements", a.elements);
    if (a.n0 > 0) config.n0 = a.n0;
    if (a.levels > 0) config.levels = a.levels;
    if (!a.tau_rule.empty()) set_config_value(config, "tau_rule", a.tau_rule);
    if (!a.sweep.empty()) set_config_value(config, "sweep", a.sweep);
    if (!a.out.empty()) config.out_dir = a.out;
    if (a.jobs > 0) config.jobs = a.jobs;

    const auto start = std::chrono::steady_clock::now();
    const ConvergenceReport report = run_study(config);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    write_markdown(std::cout, report);
    std::cout << "\nsolved in " << seconds << " s\n";
    if (!config.out_dir.empty()) {
        write_report_files(report);
        std::cout << "wrote " << (std::filesystem::path(config.out_dir) / "convergence.csv").string() << "\n";
    }

    if (!a.check) return 0;
    const auto gate = default_gate(config);
    if (!gate) {
        std::cerr << "no built-in order gate for this configuration\n";
        return 2;
    }
    const auto failures = check_gate(report, *gate);
    for (const auto& f : failures) std::cerr << "FAIL " << f << "\n";
    std::cout << (failures.empty() ? "gate: PASS\n" : "gate: FAIL\n");
    return failures.empty() ? 0 : 1;
}

int run_infsup_command(const std::string& elements, const std::vector<int>& ns)
{
    const InfSupReport report = estimate_infsup(ns, parse_infsup_pair(elements));
    std::cout << "pair " << to_string(report.pair) << " (traction-free side x = 1)\n";
    std::cout << "n,u_dofs,q_dofs,beta,kernel_dim\n";
    for (const auto& r : report.rows) {
        std::printf("%d,%d,%d,%.6e,%d\n", r.n, r.u_dofs, r.q_dofs, r.beta, r.kernel_dim);
    }
    std::printf("min/max beta = %.4f\n", report.max_beta() > 0 ? report.min_beta() / report.max_beta() : 0.0);
    return 0;
}

struct DumpArgs {
    std::string case_name = "ex1";
    std::string elements = "p2-p0-p1";
    int n = 8;
    std::string tau_rule = "h2";
    int vtk_every = 0;
    std::string out = "biot3f-dump";
};

int run_dump_command(const DumpArgs& a)
{
    const ManufacturedCase mc = get_case(a.case_name);
    const ElementPair pair = parse_element_pair(a.elements);
    const TauRule rule = parse_tau_rule(a.tau_rule);
    const std::filesystem::path dir(a.out);
    std::filesystem::create_directories(dir);

    const Spaces spaces = make_spaces(std::make_shared<const Mesh>(build_unit_square(a.n, mc.neumann)), pair);
    auto dump = [&](int step, const FieldState& s) {
        char name[64];
        std::snprintf(name, sizeof name, "state_%05d.vtk", step);
        std::ofstream os(dir / name);
        if (!os) throw Error("cannot write " + (dir / name).string());
        write_state_vtk(os, spaces, s);
    };

    RunOptions options;
    if (a.vtk_every > 0) {
        options.observer = [&](int step, const FieldState& s) {
            if (step % a.vtk_every == 0) dump(step, s);
        };
    }
    const RunResult result = run(mc, pair, a.n, rule, options);
    dump(result.grid.steps, result.final_state);
    std::cout << "steps " << result.grid.steps << ", tau " << result.grid.tau << ", output in " << dir.string()
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Three-field Biot finite element solver and verification driver"};
    app.require_subcommand(1);

    StudyArgs sa;
    auto* study = app.add_subcommand("study", "run a convergence study and print the table");
    study->add_option("--config", sa.config_file, "key = value config file")->check(CLI::ExistingFile);
    study->add_option("--case", sa.case_name, "manufactured case: ex1, ex2, ex3, ex4");
    study->add_option("--elements", sa.elements, "p2-p0-p1 or p2-p1-p1");
    study->add_option("--n0", sa.n0, "cells per side on the coarsest mesh")->check(CLI::PositiveNumber);
    study->add_option("--levels", sa.levels, "number of refinement levels")->check(CLI::PositiveNumber);
    study->add_option("--tau-rule", sa.tau_rule, "h2, h or fixed:<tau>");
    study->add_option("--sweep", sa.sweep, "space or time");
    study->add_option("--out", sa.out, "directory for convergence.csv/.md");
    study->add_option("--jobs", sa.jobs, "levels solved concurrently")->check(CLI::PositiveNumber);
    study->add_flag("--check", sa.check, "exit nonzero if observed orders miss the built-in gate");

    std::string infsup_elements = "p2-p0";
    std::vector<int> infsup_ns{2, 4, 8};
    auto* infsup = app.add_subcommand("infsup", "estimate discrete inf-sup constants on coarse meshes");
    infsup->add_option("--elements", infsup_elements, "p2-p0, p2-p1 or p1-p1");
    infsup->add_option("--n", infsup_ns, "cells per side, e.g. --n 2,4,8")->delimiter(',');

    DumpArgs da;
    auto* dump = app.add_subcommand("dump", "solve one case and write VTK snapshots");
    dump->add_option("--case", da.case_name, "manufactured case");
    dump->add_option("--elements", da.elements, "p2-p0-p1 or p2-p1-p1");
    dump->add_option("--n", da.n, "cells per side")->check(CLI::PositiveNumber);
    dump->add_option("--tau-rule", da.tau_rule, "h2, h or fixed:<tau>");
    dump->add_option("--vtk-every", da.vtk_every, "write every k-th step (0: final state only)");
    dump->add_option("--out", da.out, "output directory");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*study) return run_study_command(sa);
        if (*infsup) return run_infsup_command(infsup_elements, infsup_ns);
        if (*dump) return run_dump_command(da);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
