#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "armvalue/catcher_eval.hpp"
#include "armvalue/csv.hpp"
#include "armvalue/draws_io.hpp"
#include "armvalue/hier_model.hpp"
#include "armvalue/ledger.hpp"
#include "armvalue/opportunities.hpp"
#include "armvalue/outfield_eval.hpp"
#include "armvalue/report.hpp"
#include "armvalue/run_matrix.hpp"
#include "armvalue/synthgen.hpp"
#include "armvalue/toml.hpp"

namespace armvalue {

enum class Role { Catcher, Outfield };

inline std::optional<Role> parse_role(std::string_view text) {
    if (text == "catcher") return Role::Catcher;
    if (text == "outfield") return Role::Outfield;
    return std::nullopt;
}

namespace detail {

inline std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path.string());
    return in;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    return out;
}

inline std::string zero_padded(std::int64_t value, int width) {
    std::string digits = std::to_string(value);
    while (int(digits.size()) < width) digits.insert(digits.begin(), '0');
    return digits;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// tabulate: opportunity CSV in, cell CSV out

struct TabulateArgs {
    Role role = Role::Catcher;
    std::string in;
    std::string out;
};

inline int cmd_tabulate(const TabulateArgs& args, std::ostream& diag) {
    try {
        std::ifstream in = detail::open_input(args.in);
        std::ofstream out = detail::open_output(args.out);
        if (args.role == Role::Catcher) {
            auto records = parse_catcher_opportunities(in);
            write_catcher_cells(out, tabulate(records));
        } else {
            auto records = parse_outfield_opportunities(in);
            write_outfield_cells(out, tabulate_outfield(records));
        }
        return 0;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << '\n';
        return 1;
    }
}

// ---------------------------------------------------------------------------
// evaluate: opportunity CSV in, run-value CSV out

struct EvaluateArgs {
    Role role = Role::Catcher;
    std::string in;
    std::string matrix;
    std::string transitions;
    std::string out;
    std::string debug_situations;  // optional per-situation breakdown CSV (catcher)
};

inline constexpr std::string_view kSituationDebugHeader =
    "player_id,season,situation,outs,opportunities,attempts,stolen,caught,"
    "expected_stolen,expected_caught,delta_caught,delta_stolen,run_value";

inline void write_situation_debug(std::ostream& out,
                                  std::span<const CatcherSituationValue> values) {
    out << kSituationDebugHeader << '\n';
    for (const auto& v : values)
        out << v.catcher_id << ',' << v.season << ',' << category_code(v.situation.category) << ','
            << v.situation.outs << ',' << v.counts.opportunities << ',' << v.counts.attempts << ','
            << v.counts.stolen << ',' << v.counts.caught << ','
            << csv::format_double(v.expected_stolen) << ',' << csv::format_double(v.expected_caught)
            << ',' << csv::format_double(v.delta_caught) << ',' << csv::format_double(v.delta_stolen)
            << ',' << csv::format_double(v.run_value) << '\n';
}

inline RunValueLedger evaluate_opportunities(const EvaluateArgs& args, std::ostream& diag,
                                             std::vector<CatcherSituationValue>* breakdown = nullptr) {
    std::ifstream matrix_in = detail::open_input(args.matrix);
    ExpectedRunsMatrix matrix = ExpectedRunsMatrix::load(matrix_in);
    for (const std::string& w : matrix.monotonicity_warnings())
        diag << "warning: " << args.matrix << ": " << w << '\n';

    std::ifstream opportunities_in = detail::open_input(args.in);
    RunValueLedger ledger;
    if (args.role == Role::Catcher) {
        std::ifstream transitions_in = detail::open_input(args.transitions);
        CatcherTransitionTable table = CatcherTransitionTable::load(transitions_in);
        auto records = parse_catcher_opportunities(opportunities_in);
        CatcherTabulation tab = tabulate(records);
        if (breakdown) *breakdown = catcher_situation_values(tab, matrix, table);
        ledger = catcher_run_values(tab, matrix, table);
    } else {
        std::ifstream transitions_in = detail::open_input(args.transitions);
        OutfieldTransitionTable table = OutfieldTransitionTable::load(transitions_in);
        auto records = parse_outfield_opportunities(opportunities_in);
        ledger = outfield_run_values(tabulate_outfield(records), matrix, table);
    }
    sort_ledger(ledger);
    return ledger;
}

inline int cmd_evaluate(const EvaluateArgs& args, std::ostream& diag) {
    try {
        if (!args.debug_situations.empty() && args.role != Role::Catcher)
            throw std::runtime_error("--debug-situations applies to the catcher role only");
        std::vector<CatcherSituationValue> breakdown;
        RunValueLedger ledger = evaluate_opportunities(
            args, diag, args.debug_situations.empty() ? nullptr : &breakdown);
        std::ofstream out = detail::open_output(args.out);
        write_run_values(out, ledger);
        if (!args.debug_situations.empty()) {
            std::ofstream debug_out = detail::open_output(args.debug_situations);
            write_situation_debug(debug_out, breakdown);
        }
        return 0;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << '\n';
        return 1;
    }
}

// ---------------------------------------------------------------------------
// fit: run-value CSV in, draws binary + index out

struct FitArgs {
    std::string ledger;
    std::string out;
    std::string trace;  // optional retained-draw trace CSV
    HyperParams hyper;
    SamplerConfig sampler;
};

inline void write_trace(std::ostream& out, const PosteriorDraws& draws) {
    out << "iteration,mu0,tau2";
    for (const auto& id : draws.player_ids) out << ",mu:" << id;
    out << '\n';
    for (std::int64_t d = 0; d < draws.n_retained; ++d) {
        out << d << ',' << csv::format_double(draws.mu0[std::size_t(d)]) << ','
            << csv::format_double(draws.tau2[std::size_t(d)]);
        for (std::size_t i = 0; i < draws.player_ids.size(); ++i)
            out << ',' << csv::format_double(draws.mu_at(d, i));
        out << '\n';
    }
}

inline int cmd_fit(const FitArgs& args, std::ostream& diag) {
    try {
        std::ifstream ledger_in = detail::open_input(args.ledger);
        ModelData data = ModelData::from_ledger(parse_run_values(ledger_in));
        PosteriorDraws draws = run_gibbs(data, args.hyper, args.sampler);
        for (const std::string& w : draws.warnings) diag << "warning: " << w << '\n';
        std::ofstream bin = detail::open_output(args.out);
        write_draws(bin, draws);
        std::ofstream index = detail::open_output(args.out + ".index.csv");
        write_draws_index(index, draws);
        if (!args.trace.empty()) {
            std::ofstream trace = detail::open_output(args.trace);
            write_trace(trace, draws);
        }
        return 0;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << '\n';
        return 1;
    }
}

// ---------------------------------------------------------------------------
// report: draws + ledger in, summary CSV out

struct ReportArgs {
    std::string draws;
    std::string ledger;
    std::string out;
    std::string cells;      // optional catcher cell CSV for attempt percentages
    std::string plot_data;  // optional interval plot CSV
    std::size_t top = 0;
};

// Attempt percentages recovered from a catcher cell table.
inline std::map<std::string, double> attempt_percentages_from_cells(std::istream& in) {
    csv::Reader reader(in, kCatcherCellsHeader);
    std::map<std::string, std::pair<double, double>> totals;  // attempts, opportunities
    std::vector<std::string_view> f;
    while (reader.next(f)) {
        std::size_t line = reader.line_number();
        reader.expect_fields(f, 8);
        auto& [attempts, opportunities] = totals[std::string(f[0])];
        opportunities += double(csv::parse_int(f[4], line, "opportunities"));
        attempts += double(csv::parse_int(f[5], line, "attempts"));
    }
    std::map<std::string, double> pct;
    for (const auto& [id, t] : totals)
        if (t.second > 0.0) pct[id] = 100.0 * t.first / t.second;
    return pct;
}

inline void print_rankings(std::ostream& out, std::span<const PosteriorSummary> summaries,
                           std::size_t top) {
    auto print = [&out](const char* title, const std::vector<PosteriorSummary>& listing) {
        out << title << '\n';
        for (const auto& s : listing)
            out << "  " << s.player_id << "  mean " << csv::format_double(s.mean_individual)
                << "  interval (" << csv::format_double(s.lo_individual) << ", "
                << csv::format_double(s.hi_individual) << ")\n";
    };
    print("best individual run contributions:", rank(summaries, top, RankDirection::Best));
    print("worst individual run contributions:", rank(summaries, top, RankDirection::Worst));
}

inline int cmd_report(const ReportArgs& args, std::ostream& out_stream, std::ostream& diag) {
    try {
        std::ifstream bin = detail::open_input(args.draws);
        std::ifstream index = detail::open_input(args.draws + ".index.csv");
        PosteriorDraws draws = read_draws(bin, index);
        std::ifstream ledger_in = detail::open_input(args.ledger);
        RunValueLedger ledger = parse_run_values(ledger_in);

        std::map<std::string, double> pct;
        const std::map<std::string, double>* pct_ptr = nullptr;
        if (!args.cells.empty()) {
            std::ifstream cells_in = detail::open_input(args.cells);
            pct = attempt_percentages_from_cells(cells_in);
            pct_ptr = &pct;
        }
        auto summaries = summarize(draws, ledger, pct_ptr);
        std::ofstream out = detail::open_output(args.out);
        write_summaries(out, summaries);
        if (!args.plot_data.empty()) {
            std::ofstream plot = detail::open_output(args.plot_data);
            export_interval_plot_data(summaries, plot);
        }
        if (args.top > 0) print_rankings(out_stream, summaries, args.top);
        return 0;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << '\n';
        return 1;
    }
}

// ---------------------------------------------------------------------------
// simulate: TOML spec in, opportunity CSVs + truth out

struct SimulateArgs {
    std::string spec;
    std::string out_dir;
    std::optional<std::uint64_t> seed;  // overrides the spec's seed
};

inline int cmd_simulate(const SimulateArgs& args, std::ostream& diag) {
    try {
        std::ifstream spec_in = detail::open_input(args.spec);
        toml::Table spec = toml::parse(spec_in);
        std::uint64_t seed = args.seed ? *args.seed
                                       : std::uint64_t(spec.get_or<std::int64_t>("", "seed", 1));
        std::filesystem::create_directories(args.out_dir);
        std::filesystem::path dir(args.out_dir);

        std::ofstream truth = detail::open_output(dir / "truth.csv");
        truth << "kind,player_id,attempt_prob,steal_success_prob,thrown_out_prob,advanced_prob,"
                 "mu,sigma2\n";

        auto seasons_of = [&spec](const std::string& section) {
            auto years = spec.get_or<std::vector<std::int64_t>>(section, "seasons",
                                                                {2002, 2003, 2004, 2005});
            std::vector<int> seasons(years.begin(), years.end());
            return seasons;
        };

        if (spec.has_section("catcher")) {
            GibbsRng rng(derive_seed(seed, 1));
            CatcherLedgerSpec gen;
            gen.seed = derive_seed(seed, 2);
            gen.seasons = seasons_of("catcher");
            gen.opportunities_low = spec.get_or<std::int64_t>("catcher", "opportunities_low", 150);
            gen.opportunities_high = spec.get_or<std::int64_t>("catcher", "opportunities_high", 300);
            std::int64_t players = spec.get_or<std::int64_t>("catcher", "players", 20);
            double attempt_low = spec.get_or<double>("catcher", "attempt_prob_low", 0.02);
            double attempt_high = spec.get_or<double>("catcher", "attempt_prob_high", 0.12);
            double success_low = spec.get_or<double>("catcher", "steal_success_low", 0.55);
            double success_high = spec.get_or<double>("catcher", "steal_success_high", 0.80);
            for (std::int64_t p = 0; p < players; ++p) {
                double attempt = attempt_low + rng.uniform() * (attempt_high - attempt_low);
                double success = success_low + rng.uniform() * (success_high - success_low);
                gen.players.push_back(
                    CatcherTruth::flat("c" + detail::zero_padded(p + 1, 3), attempt, success));
                truth << "catcher," << gen.players.back().player_id << ','
                      << csv::format_double(attempt) << ',' << csv::format_double(success)
                      << ",,,,\n";
            }
            auto records = generate_catcher_ledger(gen);
            std::ofstream out = detail::open_output(dir / "catcher_opportunities.csv");
            write_catcher_opportunities(out, records);
        }

        if (spec.has_section("outfield")) {
            GibbsRng rng(derive_seed(seed, 3));
            OutfieldLedgerSpec gen;
            gen.seed = derive_seed(seed, 4);
            gen.seasons = seasons_of("outfield");
            gen.opportunities_low = spec.get_or<std::int64_t>("outfield", "opportunities_low", 150);
            gen.opportunities_high = spec.get_or<std::int64_t>("outfield", "opportunities_high", 350);
            std::int64_t players = spec.get_or<std::int64_t>("outfield", "players", 20);
            double out_low = spec.get_or<double>("outfield", "thrown_out_low", 0.01);
            double out_high = spec.get_or<double>("outfield", "thrown_out_high", 0.08);
            double adv_low = spec.get_or<double>("outfield", "advanced_low", 0.15);
            double adv_high = spec.get_or<double>("outfield", "advanced_high", 0.35);
            for (std::int64_t p = 0; p < players; ++p) {
                OutfieldTruth t;
                t.player_id = "of" + detail::zero_padded(p + 1, 3);
                t.thrown_out_prob = out_low + rng.uniform() * (out_high - out_low);
                t.advanced_prob = adv_low + rng.uniform() * (adv_high - adv_low);
                truth << "outfield," << t.player_id << ",,," << csv::format_double(t.thrown_out_prob)
                      << ',' << csv::format_double(t.advanced_prob) << ",,\n";
                gen.players.push_back(std::move(t));
            }
            auto records = generate_outfield_ledger(gen);
            std::ofstream out = detail::open_output(dir / "outfield_opportunities.csv");
            write_outfield_opportunities(out, records);
        }

        if (spec.has_section("model")) {
            GibbsRng rng(derive_seed(seed, 5));
            ModelLedgerSpec gen;
            gen.seed = derive_seed(seed, 6);
            gen.seasons = int(spec.get_or<std::int64_t>("model", "seasons", 4));
            gen.first_season = int(spec.get_or<std::int64_t>("model", "first_season", 2002));
            gen.opportunities_low = spec.get_or<std::int64_t>("model", "opportunities_low", 200);
            gen.opportunities_high = spec.get_or<std::int64_t>("model", "opportunities_high", 400);
            std::int64_t players = spec.get_or<std::int64_t>("model", "players", 50);
            double mu_sd = spec.get_or<double>("model", "mu_sd", 2.0);
            double sigma2_low = spec.get_or<double>("model", "sigma2_low", 0.5);
            double sigma2_high = spec.get_or<double>("model", "sigma2_high", 2.0);
            for (std::int64_t p = 0; p < players; ++p) {
                ModelTruth t;
                t.player_id = "m" + detail::zero_padded(p + 1, 3);
                t.mu = rng.normal(0.0, mu_sd);
                t.sigma2 = sigma2_low + rng.uniform() * (sigma2_high - sigma2_low);
                truth << "model," << t.player_id << ",,,,," << csv::format_double(t.mu) << ','
                      << csv::format_double(t.sigma2) << '\n';
                gen.players.push_back(std::move(t));
            }
            RunValueLedger ledger = generate_model_observations(gen);
            std::ofstream out = detail::open_output(dir / "model_runvalues.csv");
            write_run_values(out, ledger);
        }
        return 0;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << '\n';
        return 1;
    }
}

// ---------------------------------------------------------------------------
// pipeline: evaluate, fit and report in one deterministic pass

struct PipelineArgs {
    Role role = Role::Catcher;
    std::string in;
    std::string matrix;
    std::string transitions;
    std::string out_dir;
    HyperParams hyper;
    SamplerConfig sampler;
    std::size_t top = 0;
};

inline int cmd_pipeline(const PipelineArgs& args, std::ostream& out_stream, std::ostream& diag) {
    try {
        std::filesystem::path dir(args.out_dir);
        std::filesystem::create_directories(dir);

        EvaluateArgs eval{args.role, args.in, args.matrix, args.transitions,
                          (dir / "runvalues.csv").string(), ""};
        RunValueLedger ledger = evaluate_opportunities(eval, diag);
        {
            std::ofstream out = detail::open_output(dir / "runvalues.csv");
            write_run_values(out, ledger);
        }
        {
            std::ifstream in = detail::open_input(args.in);
            std::ofstream out = detail::open_output(dir / "cells.csv");
            if (args.role == Role::Catcher)
                write_catcher_cells(out, tabulate(parse_catcher_opportunities(in)));
            else
                write_outfield_cells(out, tabulate_outfield(parse_outfield_opportunities(in)));
        }
        if (ledger.empty()) {
            diag << "warning: no opportunities; nothing to fit\n";
            return 0;
        }

        ModelData data = ModelData::from_ledger(ledger);
        PosteriorDraws draws = run_gibbs(data, args.hyper, args.sampler);
        for (const std::string& w : draws.warnings) diag << "warning: " << w << '\n';
        {
            std::ofstream bin = detail::open_output(dir / "draws.bin");
            write_draws(bin, draws);
            std::ofstream index = detail::open_output(dir / "draws.bin.index.csv");
            write_draws_index(index, draws);
        }

        std::map<std::string, double> pct = attempt_percentages(ledger);
        auto summaries = summarize(draws, ledger, args.role == Role::Catcher ? &pct : nullptr);
        {
            std::ofstream out = detail::open_output(dir / "summary.csv");
            write_summaries(out, summaries);
            std::ofstream plot = detail::open_output(dir / "intervals.csv");
            export_interval_plot_data(summaries, plot);
        }
        if (args.top > 0) print_rankings(out_stream, summaries, args.top);
        return 0;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace armvalue
