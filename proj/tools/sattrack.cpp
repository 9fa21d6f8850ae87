#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sattrack/errors.hpp"
#include "sattrack/harness.hpp"
#include "sattrack/io.hpp"

namespace {

using namespace sattrack;

struct CommonFlags {
    std::string config_path;
    std::string mtype;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int n = 0;
    int phi = 0;
    CLI::Option* config_opt = nullptr;
    CLI::Option* mtype_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* phi_opt = nullptr;
};

void add_common(CLI::App* sub, CommonFlags& f) {
    f.config_opt = sub->add_option("--config", f.config_path, "JSON config file");
    f.seed_opt = sub->add_option("--seed", f.seed, "master seed");
    f.mtype_opt = sub->add_option("--mtype", f.mtype, "measurement type (type1|type2)");
    f.n_opt = sub->add_option("--n", f.n, "steps per run");
    f.phi_opt = sub->add_option("--phi", f.phi, "Monte Carlo runs");
    sub->add_option("--out", f.out_dir, "output directory")->capture_default_str();
}

ExperimentConfig resolve_config(const CommonFlags& f) {
    ExperimentConfig cfg =
        f.config_opt->count() ? load_config(f.config_path) : ExperimentConfig{};
    if (f.seed_opt->count()) cfg.seed = f.seed;
    if (f.mtype_opt->count()) cfg.mtype = parse_mtype(f.mtype);
    if (f.n_opt->count()) cfg.n = f.n;
    if (f.phi_opt->count()) cfg.phi = f.phi;
    validate(cfg);
    return cfg;
}

std::string out_path(const CommonFlags& f, const std::string& name) {
    std::filesystem::create_directories(f.out_dir);
    return (std::filesystem::path(f.out_dir) / name).string();
}

void print_vec(const char* label, const Vector4& v) {
    std::printf("%s", label);
    for (double x : v.e) std::printf(" %.6g", x);
    std::printf("\n");
}

int cmd_simulate(const CommonFlags& f) {
    const ExperimentConfig cfg = resolve_config(f);
    const RunResult run = run_once(cfg, 1);

    const std::string traj = out_path(f, "trajectory.csv");
    const std::string errs = out_path(f, "errors.csv");
    write_file(traj, trajectory_csv(run, cfg));
    write_file(errs, error_csv(run.trace));

    std::printf("simulate: %s, n=%d, seed=%llu\n", mtype_name(cfg.mtype).c_str(), cfg.n,
                static_cast<unsigned long long>(cfg.seed));
    print_vec("MSEE (centralized) :", run.msee.kappa);
    print_vec("MSEE (information) :", run.msee.Gamma);
    for (const auto& line : run.log) std::printf("note: %s\n", line.c_str());
    std::printf("wrote %s\nwrote %s\n", traj.c_str(), errs.c_str());
    return 0;
}

int cmd_tables(const CommonFlags& f) {
    ExperimentConfig cfg = resolve_config(f);

    cfg.mtype = MeasurementType::Type1;
    const MonteCarloResult mc1 = monte_carlo(cfg);
    cfg.mtype = MeasurementType::Type2;
    const MonteCarloResult mc2 = monte_carlo(cfg);

    const std::string t1 = msee_table_markdown(mc1.per_run);
    const std::string t2 = msee_table_markdown(mc2.per_run);
    const std::string t3 = amsee_table_markdown(mc1.amsee, mc2.amsee);

    write_file(out_path(f, "msee_type1.md"), t1);
    write_file(out_path(f, "msee_type2.md"), t2);
    write_file(out_path(f, "amsee.md"), t3);

    std::printf("Per-run MSEE, type 1 (information form), %d runs of %d steps:\n\n%s\n",
                cfg.phi, cfg.n, t1.c_str());
    std::printf("Per-run MSEE, type 2 (information form), %d runs of %d steps:\n\n%s\n",
                cfg.phi, cfg.n, t2.c_str());
    std::printf("AMSEE across %d runs:\n\n%s", cfg.phi, t3.c_str());
    return 0;
}

int cmd_are(const CommonFlags& f, double tol, int max_iter) {
    const ExperimentConfig cfg = resolve_config(f);
    const DerivedModel d = derive_model(cfg);
    try {
        const SteadyState ss = solve_are(d.model, cfg.tau_p0, tol, max_iter);
        std::printf("%s", are_report_text(ss, cfg.mtype, tol).c_str());
        return 0;
    } catch (const NoConvergence& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"satellite tracking filters: simulation, Monte Carlo tables, steady state"};
    app.require_subcommand(1);

    CommonFlags sim_flags, tab_flags, are_flags;
    double are_tol = 1e-10;
    int are_max_iter = 200000;

    CLI::App* sim = app.add_subcommand("simulate", "single run; writes trajectory and error CSVs");
    add_common(sim, sim_flags);
    CLI::App* tab = app.add_subcommand("tables", "Monte Carlo MSEE/AMSEE Markdown tables");
    add_common(tab, tab_flags);
    CLI::App* are = app.add_subcommand("are", "steady-state Riccati solution and predictor gain");
    add_common(are, are_flags);
    are->add_option("--tol", are_tol, "fixed-point tolerance")->capture_default_str();
    are->add_option("--max-iter", are_max_iter, "iteration cap")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(sim_flags);
        if (tab->parsed()) return cmd_tables(tab_flags);
        if (are->parsed()) return cmd_are(are_flags, are_tol, are_max_iter);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
