// armvalue: throwing-ability evaluation from opportunity-grain event data.
//
//   tabulate  count opportunities into player/situation cells
//   evaluate  convert opportunity outcomes into seasonal run values
//   fit       sample the hierarchical posterior over player abilities
//   report    posterior means, 95% intervals and rankings
//   simulate  generate synthetic opportunity files from known truths
//   pipeline  evaluate + fit + report in one deterministic run

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "armvalue/pipeline.hpp"

namespace {

armvalue::Role role_from(const std::string& name) {
    auto role = armvalue::parse_role(name);
    if (!role) throw CLI::ValidationError("--role", "role must be 'catcher' or 'outfield'");
    return *role;
}

void add_sampler_options(CLI::App* cmd, armvalue::SamplerConfig& sampler,
                         armvalue::HyperParams& hyper) {
    cmd->add_option("--seed", sampler.seed, "RNG seed");
    cmd->add_option("--burnin", sampler.burnin, "discarded warm-up iterations");
    cmd->add_option("--draws", sampler.draws, "retained iterations");
    cmd->add_option("--thin", sampler.thin, "keep every thin-th draw");
    cmd->add_option("--nu", hyper.nu, "sigma^2 prior degrees of freedom")->check(CLI::NonNegativeNumber);
    cmd->add_option("--beta", hyper.beta, "mu0 prior variance")->check(CLI::PositiveNumber);
    cmd->add_option("--gamma", hyper.gamma, "tau^2 prior degrees of freedom")->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"throwing-ability run values and hierarchical posterior estimates"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "TOML config file; sections name subcommands");

    std::string role_name = "catcher";
    app.add_option("--role", role_name, "catcher or outfield")->capture_default_str();

    armvalue::TabulateArgs tabulate_args;
    std::string tabulate_role;
    auto* tab = app.add_subcommand("tabulate", "count opportunities into cells");
    tab->add_option("role", tabulate_role, "catcher or outfield");
    tab->add_option("--in", tabulate_args.in, "opportunity CSV")->required();
    tab->add_option("--out", tabulate_args.out, "cell CSV")->required();

    armvalue::EvaluateArgs evaluate_args;
    auto* eval = app.add_subcommand("evaluate", "opportunity outcomes to run values");
    eval->add_option("--in", evaluate_args.in, "opportunity CSV")->required();
    eval->add_option("--matrix", evaluate_args.matrix, "expected-runs matrix CSV")->required();
    eval->add_option("--transitions", evaluate_args.transitions, "transition table CSV")->required();
    eval->add_option("--out", evaluate_args.out, "run-value CSV")->required();
    eval->add_option("--debug-situations", evaluate_args.debug_situations,
                     "per-situation breakdown CSV (catcher role)");

    armvalue::FitArgs fit_args;
    auto* fit = app.add_subcommand("fit", "sample the posterior over player abilities");
    fit->add_option("--ledger", fit_args.ledger, "run-value CSV")->required();
    fit->add_option("--out", fit_args.out, "draws binary (index CSV written alongside)")->required();
    fit->add_option("--trace", fit_args.trace, "retained-draw trace CSV");
    add_sampler_options(fit, fit_args.sampler, fit_args.hyper);

    armvalue::ReportArgs report_args;
    auto* rep = app.add_subcommand("report", "summarize posterior draws");
    rep->add_option("--draws", report_args.draws, "draws binary from fit")->required();
    rep->add_option("--ledger", report_args.ledger, "run-value CSV")->required();
    rep->add_option("--out", report_args.out, "summary CSV")->required();
    rep->add_option("--cells", report_args.cells, "catcher cell CSV for attempt percentages");
    rep->add_option("--plot-data", report_args.plot_data, "interval plot CSV");
    rep->add_option("--top", report_args.top, "print the best/worst k players");

    armvalue::SimulateArgs simulate_args;
    std::optional<std::uint64_t> simulate_seed;
    auto* sim = app.add_subcommand("simulate", "generate synthetic opportunity files");
    sim->add_option("--spec", simulate_args.spec, "TOML generation spec")->required();
    sim->add_option("--out-dir", simulate_args.out_dir, "output directory")->required();
    sim->add_option("--seed", simulate_seed, "override the spec seed");

    armvalue::PipelineArgs pipeline_args;
    auto* pipe = app.add_subcommand("pipeline", "evaluate, fit and report");
    pipe->add_option("--in", pipeline_args.in, "opportunity CSV")->required();
    pipe->add_option("--matrix", pipeline_args.matrix, "expected-runs matrix CSV")->required();
    pipe->add_option("--transitions", pipeline_args.transitions, "transition table CSV")->required();
    pipe->add_option("--out-dir", pipeline_args.out_dir, "output directory")->required();
    pipe->add_option("--top", pipeline_args.top, "print the best/worst k players");
    add_sampler_options(pipe, pipeline_args.sampler, pipeline_args.hyper);

    CLI11_PARSE(app, argc, argv);

    try {
        if (tab->parsed()) {
            tabulate_args.role = role_from(tabulate_role.empty() ? role_name : tabulate_role);
            return armvalue::cmd_tabulate(tabulate_args, std::cerr);
        }
        if (eval->parsed()) {
            evaluate_args.role = role_from(role_name);
            return armvalue::cmd_evaluate(evaluate_args, std::cerr);
        }
        if (fit->parsed()) return armvalue::cmd_fit(fit_args, std::cerr);
        if (rep->parsed()) return armvalue::cmd_report(report_args, std::cout, std::cerr);
        if (sim->parsed()) {
            simulate_args.seed = simulate_seed;
            return armvalue::cmd_simulate(simulate_args, std::cerr);
        }
        if (pipe->parsed()) {
            pipeline_args.role = role_from(role_name);
            return armvalue::cmd_pipeline(pipeline_args, std::cout, std::cerr);
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
