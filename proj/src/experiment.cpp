#include "adasolve/experiment.hpp"

#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "adasolve/dataset.hpp"
#include "adasolve/errors.hpp"
#include "adasolve/extraction.hpp"
#include "table.hpp"

namespace adasolve {

namespace {

constexpr std::string_view kDecompositionHeader = "Let’s break down this problem:";

std::size_t subquestions_in(const std::string& completion) {
    if (const auto n = count_subquestions(completion)) return n;
    return count_subquestions(std::string(kDecompositionHeader) + completion);
}

}  // namespace

Decimal percent(std::size_t num, std::size_t den, unsigned places) {
    if (den == 0) throw std::domain_error("percent of an empty set");
    return Decimal::divide(Decimal(static_cast<std::int64_t>(num)) * Decimal(100),
                           Decimal(static_cast<std::int64_t>(den)), places);
}

std::vector<SolveTrace> solve_all(const std::vector<Problem>& problems, std::size_t workers,
                                  const std::function<SolveTrace(const Problem&)>& solve_one) {
    std::vector<SolveTrace> traces(problems.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < problems.size(); i = next.fetch_add(1)) {
            try {
                traces[i] = solve_one(problems[i]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(problems.size());
            }
        }
    };
    workers = std::max<std::size_t>(1, std::min(workers, problems.size()));
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
    }
    if (failure) std::rethrow_exception(failure);
    return traces;
}

ExperimentResult summarize(std::vector<SolveTrace> traces, const std::vector<Problem>& problems,
                           const std::vector<std::string>& solver_labels, const UsageMap& usage,
                           const PriceTable* prices, const ExperimentOptions& options, std::string strategy_name,
                           std::string threshold) {
    if (problems.empty()) throw ValidationError("cannot report on an empty dataset");
    if (traces.size() != problems.size()) throw ValidationError("trace count does not match problem count");

    ExperimentResult result;
    auto& report = result.report;
    report.dataset = options.dataset_name;
    report.strategy = std::move(strategy_name);
    report.threshold = std::move(threshold);
    report.trace_log = options.trace_log;
    report.n_problems = problems.size();

    for (std::size_t i = 0; i < solver_labels.size(); ++i) report.usage.push_back(SolverUsage{i, solver_labels[i], 0, 0, std::nullopt});
    std::vector<std::pair<std::size_t, std::size_t>> subq(solver_labels.size(), {0, 0});  // (sum, samples)

    std::size_t total_rounds = 0;
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const auto& t = traces[i];
        if (t.problem_id != problems[i].id) throw ValidationError("trace order does not match dataset at " + t.problem_id);
        const bool ok = t.termination != Termination::aborted && grade(problems[i].gold, t.final_answer);
        result.correct.push_back(ok);
        report.correct += ok ? 1 : 0;
        report.errored += t.termination == Termination::aborted ? 1 : 0;
        total_rounds += t.rounds.size();
        for (const auto& r : t.rounds) {
            if (r.solver_index >= report.usage.size()) throw ValidationError("trace references unknown solver index");
            ++report.usage[r.solver_index].executed;
            const auto& label = solver_labels[r.solver_index];
            if (label.find("/l2m") != std::string::npos) {
                for (const auto& s : r.samples) {
                    subq[r.solver_index].first += subquestions_in(s.raw_text);
                    ++subq[r.solver_index].second;
                }
            }
        }
        if (t.chosen_round) ++report.usage[t.rounds.at(*t.chosen_round).solver_index].chosen;
    }
    for (std::size_t i = 0; i < subq.size(); ++i) {
        if (subq[i].second > 0) {
            report.usage[i].avg_subquestions =
                Decimal::divide(Decimal(static_cast<std::int64_t>(subq[i].first)),
                                Decimal(static_cast<std::int64_t>(subq[i].second)), 2);
        }
    }

    const std::size_t denominator = options.exclude_errored ? report.n_problems - report.errored : report.n_problems;
    if (denominator == 0) throw ValidationError("every problem errored; accuracy is undefined");
    report.accuracy_percent = percent(report.correct, denominator, 1);
    result.accuracy_exact = percent(report.correct, denominator, 6);
    report.avg_rounds = Decimal::divide(Decimal(static_cast<std::int64_t>(total_rounds)),
                                        Decimal(static_cast<std::int64_t>(report.n_problems)), 2);
    if (prices) report.cost = make_cost_report(usage, *prices);
    result.usage = usage;
    result.traces = std::move(traces);
    return result;
}

ExperimentResult run_experiment(const AdaptationStrategy& strategy, const EvaluationConfig& config,
                                const std::vector<Problem>& problems, Backend& backend, const PromptRegistry& prompts,
                                const PriceTable* prices, const ExperimentOptions& options) {
    if (problems.empty()) throw ValidationError("dataset is empty");
    config.validate(strategy);
    CostLedger ledger;
    const AdaptiveSolver solver(SolveContext{backend, prompts, ledger, prices, options.retry});
    for (const auto& p : problems) solver.check_prompts(strategy, p.family);

    auto traces = solve_all(problems, options.workers,
                            [&](const Problem& p) { return solver.solve(p, strategy, config); });
    std::vector<std::string> labels;
    for (const auto& s : strategy.solvers()) labels.push_back(s.label());
    return summarize(std::move(traces), problems, labels, ledger.snapshot(), prices, options, strategy.name(),
                     config.threshold.to_string());
}

nlohmann::json ExperimentReport::to_json() const {
    nlohmann::json usage_json = nlohmann::json::array();
    for (const auto& u : usage) {
        nlohmann::json j = {{"index", u.index}, {"solver", u.label}, {"chosen", u.chosen}, {"executed", u.executed}};
        if (u.avg_subquestions) j["avg_subquestions"] = u.avg_subquestions->to_fixed(2);
        usage_json.push_back(std::move(j));
    }
    nlohmann::json j = {{"dataset", dataset},
                        {"strategy", strategy},
                        {"threshold", threshold},
                        {"n_problems", n_problems},
                        {"correct", correct},
                        {"errored", errored},
                        {"accuracy_percent", accuracy_percent.to_fixed(1)},
                        {"avg_rounds", avg_rounds.to_fixed(2)},
                        {"solver_usage", usage_json},
                        {"trace_log", trace_log}};
    if (cost) {
        nlohmann::json per_model = nlohmann::json::object();
        for (const auto& [model, c] : cost->per_model) {
            per_model[model] = {{"calls", c.usage.calls},
                                {"prompt_tokens", c.usage.prompt_tokens},
                                {"completion_tokens", c.usage.completion_tokens},
                                {"dollars", c.dollars.to_string()}};
        }
        j["cost"] = {{"per_model", per_model}, {"total_dollars", cost->total.to_string()}};
        if (cost->baseline) j["cost"]["baseline_dollars"] = cost->baseline->to_string();
        if (cost->saved_percent) j["cost"]["saved_percent"] = cost->saved_percent->to_fixed(1);
    }
    return j;
}

std::string ExperimentReport::render_table() const {
    using detail::format_table;
    std::string out = format_table(
        {{"dataset", "strategy", "problems", "accuracy", "avg_rounds", "errored", "cost($)"},
         {dataset, strategy, std::to_string(n_problems), accuracy_percent.to_fixed(1), avg_rounds.to_fixed(2),
          std::to_string(errored), cost ? cost->total.to_string() : "-"}});
    std::vector<detail::Row> solvers{{"#", "solver", "chosen", "executed", "avg_subq"}};
    for (const auto& u : usage) {
        solvers.push_back({std::to_string(u.index), u.label, std::to_string(u.chosen), std::to_string(u.executed),
                           u.avg_subquestions ? u.avg_subquestions->to_fixed(2) : "-"});
    }
    out += '\n' + format_table(solvers);
    if (cost) {
        std::vector<detail::Row> models{{"model", "calls", "prompt_tokens", "completion_tokens", "dollars"}};
        for (const auto& [model, c] : cost->per_model) {
            models.push_back({model, std::to_string(c.usage.calls), std::to_string(c.usage.prompt_tokens),
                              std::to_string(c.usage.completion_tokens), c.dollars.to_string()});
        }
        out += '\n' + format_table(models);
    }
    return out;
}

AdaptationStrategy with_sample_count(const AdaptationStrategy& strategy, int n) {
    if (n < 1) throw ValidationError("sample size must be >= 1");
    auto solvers = strategy.solvers();
    for (auto& s : solvers) {
        if (s.sample_count > 1) s.sample_count = n;
    }
    return AdaptationStrategy(strategy.name(), std::move(solvers), strategy.selection_rule());
}

SweepResult sweep_tradeoff(const AdaptationStrategy& strategy_template, const std::vector<int>& n_values,
                           const std::vector<Decimal>& theta_values, const std::vector<Problem>& problems,
                           Backend& backend, const PromptRegistry& prompts, const PriceTable& prices,
                           const AdaptationStrategy& baseline, const ExperimentOptions& options) {
    if (n_values.empty() || theta_values.empty()) throw ValidationError("sweep needs at least one N and one theta");
    for (const auto& theta : theta_values) {
        if (theta <= Decimal(0) || theta > Decimal(1)) {
            throw ValidationError("theta must lie in (0, 1], got " + theta.to_string());
        }
    }

    const auto base = run_experiment(baseline, EvaluationConfig{}, problems, backend, prompts, &prices, options);
    SweepResult result;
    result.baseline_cost = base.report.cost->total;
    result.baseline_accuracy = base.accuracy_exact;
    const CostAccuracy base_point{result.baseline_cost, result.baseline_accuracy};

    for (int n : n_values) {
        const auto strategy = with_sample_count(strategy_template, n);
        for (const auto& theta : theta_values) {
            EvaluationConfig config;
            config.threshold = theta;
            const auto run = run_experiment(strategy, config, problems, backend, prompts, &prices, options);
            SweepPoint point;
            point.n = n;
            point.theta = theta;
            point.cost = run.report.cost->total;
            point.accuracy = run.accuracy_exact;
            point.avg_rounds = run.report.avg_rounds;
            point.relative = relative_point({point.cost, point.accuracy}, base_point);
            result.points.push_back(std::move(point));
        }
    }
    return result;
}

nlohmann::json SweepResult::to_json() const {
    nlohmann::json points_json = nlohmann::json::array();
    for (const auto& p : points) {
        points_json.push_back({{"n", p.n},
                               {"theta", p.theta.to_string()},
                               {"cost", p.cost.to_string()},
                               {"accuracy_percent", p.accuracy.to_fixed(1)},
                               {"avg_rounds", p.avg_rounds.to_fixed(2)},
                               {"relative_cost", p.relative.relative_cost.to_fixed(3)},
                               {"relative_accuracy", p.relative.relative_accuracy.to_fixed(3)}});
    }
    return {{"baseline", {{"cost", baseline_cost.to_string()}, {"accuracy_percent", baseline_accuracy.to_fixed(1)}}},
            {"points", points_json}};
}

std::string SweepResult::render_table() const {
    std::vector<detail::Row> rows{{"N", "theta", "cost", "accuracy", "avg_rounds", "rel_cost", "rel_acc"}};
    for (const auto& p : points) {
        rows.push_back({std::to_string(p.n), p.theta.to_string(), p.cost.to_string(), p.accuracy.to_fixed(1),
                        p.avg_rounds.to_fixed(2), p.relative.relative_cost.to_fixed(3),
                        p.relative.relative_accuracy.to_fixed(3)});
    }
    return "baseline cost " + baseline_cost.to_string() + ", accuracy " + baseline_accuracy.to_fixed(1) + "\n\n" +
           detail::format_table(rows);
}

}  // namespace adasolve
