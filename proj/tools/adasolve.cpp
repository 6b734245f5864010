#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "adasolve/analysis.hpp"
#include "adasolve/dataset.hpp"
#include "adasolve/engine.hpp"
#include "adasolve/experiment.hpp"
#include "adasolve/http_backend.hpp"
#include "adasolve/php.hpp"
#include "adasolve/scripted_backend.hpp"
#include "adasolve/serialize.hpp"

namespace fs = std::filesystem;
using namespace adasolve;

namespace {

struct Common {
    std::string dataset;
    std::string backend = "http";
    std::string http_config;
    std::string prices;
    std::string prompts;
    std::string out = "out";
    std::string dataset_name;
    std::size_t workers = 1;
    bool exclude_errored = false;
    BuiltinModels models;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--dataset", c.dataset, "Line-delimited problem file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--backend", c.backend, "scripted:<fixture.jsonl> or http");
    cmd->add_option("--http-config", c.http_config, "JSON config for the http backend")->check(CLI::ExistingFile);
    cmd->add_option("--prices", c.prices, "Price table JSON")->check(CLI::ExistingFile);
    cmd->add_option("--prompts", c.prompts, "Prompt directory (default: built-in)")->check(CLI::ExistingDirectory);
    cmd->add_option("--out", c.out, "Output directory");
    cmd->add_option("--name", c.dataset_name, "Dataset label in reports (default: file stem)");
    cmd->add_option("--workers", c.workers, "Concurrent problems")->check(CLI::PositiveNumber);
    cmd->add_flag("--exclude-errored", c.exclude_errored, "Drop aborted problems from the accuracy denominator");
    cmd->add_option("--weak-model", c.models.weak, "Model id used for the weak/general solver");
    cmd->add_option("--strong-model", c.models.strong, "Model id used for the strong solver");
    cmd->add_option("--local-model", c.models.local, "Model id used for the local solver");
}

std::unique_ptr<Backend> make_backend(const Common& c) {
    constexpr std::string_view scripted = "scripted:";
    if (c.backend.rfind(scripted, 0) == 0) {
        return std::make_unique<ScriptedBackend>(read_fixtures(c.backend.substr(scripted.size())));
    }
    if (c.backend == "http") {
        HttpBackendConfig config;
        if (!c.http_config.empty()) {
            std::ifstream in(c.http_config);
            if (!in) throw ValidationError("cannot open " + c.http_config);
            config = HttpBackendConfig::from_json(nlohmann::json::parse(in));
        }
        if (std::getenv(config.api_key_env.c_str()) == nullptr) {
            throw BackendError(BackendErrorKind::credential, false,
                               "environment variable " + config.api_key_env + " is not set");
        }
        return std::make_unique<HttpBackend>(config);
    }
    throw ValidationError("--backend must be scripted:<path> or http");
}

PromptRegistry load_prompts(const Common& c) {
    return c.prompts.empty() ? PromptRegistry::load_default() : PromptRegistry::load(c.prompts);
}

std::optional<PriceTable> load_prices(const Common& c) {
    if (c.prices.empty()) return std::nullopt;
    return PriceTable::load(c.prices);
}

ExperimentOptions options_for(const Common& c) {
    ExperimentOptions o;
    o.workers = c.workers;
    o.exclude_errored = c.exclude_errored;
    o.dataset_name = c.dataset_name.empty() ? fs::path(c.dataset).stem().string() : c.dataset_name;
    return o;
}

StrategyFile resolve_strategy(const std::string& spec, const BuiltinModels& models) {
    for (auto name : builtin_strategy_names()) {
        if (spec == name) return {builtin_strategy(name, models), EvaluationConfig{}};
    }
    if (fs::exists(spec)) return load_strategy_file(spec);
    std::string names;
    for (auto n : builtin_strategy_names()) names += std::string(names.empty() ? "" : ", ") + std::string(n);
    throw ValidationError("unknown strategy '" + spec + "' (built-ins: " + names + ", or a JSON file)");
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

void write_report(const fs::path& dir, const ExperimentResult& result) {
    fs::create_directories(dir);
    write_traces(dir / result.report.trace_log, result.traces);
    write_file(dir / "report.json", result.report.to_json().dump(2) + "\n");
    write_file(dir / "report.txt", result.report.render_table());
    std::cout << result.report.render_table();
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive multi-solver orchestration for LLM reasoning benchmarks"};
    app.require_subcommand(1);

    Common common;
    std::string strategy_spec;
    std::optional<int> n;
    std::optional<std::string> theta;
    std::optional<std::size_t> max_rounds;

    auto* run = app.add_subcommand("run", "Solve a dataset with one strategy");
    add_common(run, common);
    run->add_option("--strategy", strategy_spec, "Built-in name (A_M1 ... A_PD) or strategy JSON")->required();
    run->add_option("--n", n, "Sample count for self-consistent solvers");
    run->add_option("--theta", theta, "Consistency threshold in (0, 1]");
    run->add_option("--max-rounds", max_rounds, "Round cap");

    std::string n_values = "3";
    std::string theta_values = "1";
    std::string baseline_spec;
    auto* sweep = app.add_subcommand("sweep", "Cost/accuracy trade-off over sample sizes and thresholds");
    add_common(sweep, common);
    sweep->add_option("--strategy", strategy_spec, "Strategy template")->required();
    sweep->add_option("--n-values", n_values, "Comma-separated sample sizes");
    sweep->add_option("--theta-values", theta_values, "Comma-separated thresholds");
    sweep->add_option("--baseline", baseline_spec, "Baseline strategy (built-in or JSON)")->required();

    std::string traces_path, traces_a, traces_b;
    bool difficulty = false;
    int top_bucket = 5;
    auto* analyze = app.add_subcommand("analyze", "Reports over saved trace logs");
    analyze->add_option("--traces", traces_path, "Trace log of the run to analyze")->required()->check(CLI::ExistingFile);
    analyze->add_option("--dataset", common.dataset, "Problem file the traces were produced from")
        ->required()
        ->check(CLI::ExistingFile);
    analyze->add_option("--strategy", strategy_spec, "Strategy used for the traces (labels solvers)");
    analyze->add_flag("--difficulty", difficulty, "Per expected-step bucket breakdown");
    analyze->add_option("--top-bucket", top_bucket, "Steps at or above this share one bucket");
    analyze->add_option("--traces-a", traces_a, "Traces of solver A alone")->check(CLI::ExistingFile);
    analyze->add_option("--traces-b", traces_b, "Traces of solver B alone")->check(CLI::ExistingFile);
    analyze->add_option("--weak-model", common.models.weak);
    analyze->add_option("--strong-model", common.models.strong);
    analyze->add_option("--local-model", common.models.local);

    std::size_t php_rounds = 4;
    auto* php = app.add_subcommand("php", "Progressive-hint baseline");
    add_common(php, common);
    php->add_option("--max-rounds", php_rounds, "Round cap (>= 2)");
    std::string php_model;
    php->add_option("--model", php_model, "Model id (default: the weak model)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            const auto problems = load_dataset(common.dataset);
            const auto traces = read_traces(traces_path);
            std::size_t n_solvers = 0;
            std::vector<std::string> labels;
            if (!strategy_spec.empty()) {
                const auto file = resolve_strategy(strategy_spec, common.models);
                for (const auto& s : file.strategy.solvers()) labels.push_back(s.label());
            } else {
                for (const auto& t : traces) {
                    for (const auto& r : t.rounds) n_solvers = std::max(n_solvers, r.solver_index + 1);
                }
                for (std::size_t i = 0; i < n_solvers; ++i) labels.push_back("solver" + std::to_string(i));
            }
            n_solvers = labels.size();
            // Traces are written in dataset order; reorder defensively.
            std::map<std::string, SolveTrace> by_id;
            for (const auto& t : traces) by_id.emplace(t.problem_id, t);
            std::vector<SolveTrace> ordered;
            for (const auto& p : problems) {
                const auto it = by_id.find(p.id);
                if (it == by_id.end()) throw ValidationError("no trace for problem " + p.id);
                ordered.push_back(it->second);
            }
            ExperimentOptions o;
            o.dataset_name = fs::path(common.dataset).stem().string();
            o.trace_log = fs::path(traces_path).filename().string();
            const auto result = summarize(ordered, problems, labels, {}, nullptr, o,
                                          traces.empty() ? "" : traces.front().strategy, "-");
            std::cout << result.report.render_table();
            if (difficulty) {
                std::cout << '\n' << difficulty_breakdown(ordered, problems, n_solvers, top_bucket).render_table();
            }
            if (!traces_a.empty() || !traces_b.empty()) {
                if (traces_a.empty() || traces_b.empty()) throw ValidationError("--traces-a and --traces-b go together");
                const auto groups = cross_method_analysis(read_traces(traces_a), read_traces(traces_b), ordered, problems);
                std::cout << '\n' << render_cross_method(groups);
            }
            return 0;
        }

        const auto problems = load_dataset(common.dataset);
        const auto prompts = load_prompts(common);
        const auto prices = load_prices(common);
        const PriceTable* price_ptr = prices ? &*prices : nullptr;
        auto backend = make_backend(common);
        const auto options = options_for(common);

        if (run->parsed()) {
            auto file = resolve_strategy(strategy_spec, common.models);
            auto strategy = n ? with_sample_count(file.strategy, *n) : file.strategy;
            if (theta) file.config.threshold = Decimal::from_string(*theta);
            if (max_rounds) file.config.max_rounds = *max_rounds;
            write_report(common.out, run_experiment(strategy, file.config, problems, *backend, prompts, price_ptr, options));
        } else if (sweep->parsed()) {
            if (!prices) throw ValidationError("sweep needs --prices");
            std::vector<int> ns;
            for (const auto& s : split(n_values)) ns.push_back(std::stoi(s));
            std::vector<Decimal> thetas;
            for (const auto& s : split(theta_values)) thetas.push_back(Decimal::from_string(s));
            const auto strategy = resolve_strategy(strategy_spec, common.models).strategy;
            const auto baseline = resolve_strategy(baseline_spec, common.models).strategy;
            const auto result =
                sweep_tradeoff(strategy, ns, thetas, problems, *backend, prompts, *prices, baseline, options);
            fs::create_directories(common.out);
            write_file(fs::path(common.out) / "sweep.json", result.to_json().dump(2) + "\n");
            std::cout << result.render_table();
        } else if (php->parsed()) {
            const std::string model = php_model.empty() ? common.models.weak : php_model;
            CostLedger ledger;
            const SolveContext ctx{*backend, prompts, ledger, price_ptr, options.retry};
            auto traces = solve_all(problems, options.workers,
                                    [&](const Problem& p) { return php_solve(ctx, p, model, php_rounds); });
            write_report(common.out,
                         summarize(std::move(traces), problems, {model + "/cot", model + "/php"}, ledger.snapshot(),
                                   price_ptr, options, "PHP(" + model + ")", "-"));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
