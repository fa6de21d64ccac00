// Command-line front end: run a catalog problem, run a convergence study, or
// list the catalog. All numeric output goes to CSV files in --out.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bprk/bprk.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitDiverged = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitConfig = 4;

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
};

void add_common(CLI::App* sub, CommonOpts& c) {
    sub->add_option("--config", c.config_path, "key=value configuration file");
    sub->add_option("--set", c.overrides, "override one key=value (repeatable)")
        ->take_all();
    sub->add_option("--out", c.out_dir, "output directory for CSV files");
}

bprk::RunConfig assemble(const CommonOpts& c) {
    bprk::RunConfig cfg;
    if (!c.config_path.empty()) cfg = bprk::load_config(c.config_path);
    for (const auto& kv : c.overrides) bprk::apply_override(cfg, kv);
    if (!c.out_dir.empty()) cfg.out_dir = c.out_dir;
    return cfg;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream os(p);
    if (!os) throw std::runtime_error("cannot open output file: " + p.string());
    return os;
}

int do_run(const CommonOpts& c) {
    const bprk::RunConfig cfg = assemble(c);
    const bprk::ResolvedRun r = bprk::resolve(cfg);
    const bprk::RunResult res = bprk::run_problem(r);

    fs::path out = r.out_dir.empty() ? fs::path(".") : fs::path(r.out_dir);
    fs::create_directories(out);
    {
        auto os = open_out(out / "report.csv");
        bprk::write_report_csv(os, res, r);
    }
    {
        auto os = open_out(out / "final.csv");
        bprk::write_snapshot_csv(os, res.state, r.spec.equation);
    }
    for (std::size_t i = 0; i < res.snapshots.size(); ++i) {
        char name[40];
        std::snprintf(name, sizeof(name), "snapshot_%06zu.csv",
                      (i + 1) * r.snapshot_every);
        auto os = open_out(out / name);
        bprk::write_snapshot_csv(os, res.snapshots[i].second, r.spec.equation);
    }
    {
        auto os = open_out(out / "run_info.txt");
        bprk::write_run_info(os, res, r);
    }

    std::cout << r.spec.name << ": " << bprk::outcome_name(res.outcome) << " after "
              << res.steps << " steps, t = " << res.t_final << "\n";
    if (!res.message.empty()) std::cout << "  " << res.message << "\n";
    switch (res.outcome) {
        case bprk::Outcome::success: return kExitSuccess;
        case bprk::Outcome::diverged: return kExitDiverged;
        default: return kExitInfeasible;
    }
}

int do_converge(const CommonOpts& c) {
    const bprk::RunConfig cfg = assemble(c);
    if (cfg.dts.empty())
        throw std::invalid_argument("config: converge requires dts=<comma list>");
    const std::vector<double> dts = bprk::parse_dt_list(cfg.dts);
    const bprk::ConvergenceResult cr = bprk::convergence_study(cfg, dts);

    fs::path out = cfg.out_dir.empty() ? fs::path(".") : fs::path(cfg.out_dir);
    fs::create_directories(out);
    {
        auto os = open_out(out / "converge.csv");
        bprk::write_convergence_csv(os, cr);
    }
    std::cout << cfg.problem << " " << (cfg.scheme.empty() ? "default" : cfg.scheme)
              << ": fitted order " << cr.fitted_order
              << (cr.monotone ? "" : " (non-monotone error sequence)") << "\n";
    return kExitSuccess;
}

int do_list() {
    for (const auto& name : bprk::problem_names()) {
        const bprk::ProblemSpec p = bprk::make_problem(name);
        std::printf("%-20s %s\n", p.name.c_str(), p.summary.c_str());
    }
    return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounds-preserving Runge-Kutta solver for hyperbolic conservation laws"};
    app.require_subcommand(1);

    CommonOpts run_opts, conv_opts;
    CLI::App* run = app.add_subcommand("run", "integrate one problem and write CSV output");
    add_common(run, run_opts);
    CLI::App* conv = app.add_subcommand("converge", "dt-refinement study against the reference");
    add_common(conv, conv_opts);
    app.add_subcommand("list-problems", "list the problem catalog");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitSuccess : kExitConfig;
    }

    try {
        if (run->parsed()) return do_run(run_opts);
        if (conv->parsed()) return do_converge(conv_opts);
        return do_list();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDiverged;
    }
}
