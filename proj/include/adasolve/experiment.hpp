#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "adasolve/cost.hpp"
#include "adasolve/engine.hpp"
#include "adasolve/model.hpp"

namespace adasolve {

struct ExperimentOptions {
    std::size_t workers = 1;
    /// Aborted traces leave the accuracy denominator instead of counting as wrong.
    bool exclude_errored = false;
    std::string dataset_name = "dataset";
    std::string trace_log = "traces.jsonl";
    RetryPolicy retry{};
};

struct SolverUsage {
    std::size_t index = 0;
    std::string label;
    std::size_t chosen = 0;
    std::size_t executed = 0;
    std::optional<Decimal> avg_subquestions;
};

struct ExperimentReport {
    std::string dataset;
    std::string strategy;
    std::string threshold;
    std::size_t n_problems = 0;
    std::size_t correct = 0;
    std::size_t errored = 0;
    Decimal accuracy_percent;  // one decimal
    Decimal avg_rounds;        // two decimals
    std::optional<CostReport> cost;
    std::vector<SolverUsage> usage;
    std::string trace_log;

    [[nodiscard]] nlohmann::json to_json() const;
    /// Aligned, human-readable table.
    [[nodiscard]] std::string render_table() const;
};

struct ExperimentResult {
    std::vector<SolveTrace> traces;  // dataset order
    std::vector<bool> correct;
    UsageMap usage;
    ExperimentReport report;
    /// Accuracy before presentation rounding (six decimals).
    Decimal accuracy_exact;
};

/// Fans problems out over `workers` threads; results keep dataset order.
std::vector<SolveTrace> solve_all(const std::vector<Problem>& problems, std::size_t workers,
                                  const std::function<SolveTrace(const Problem&)>& solve_one);

/// Grades traces and aggregates the report. `solver_labels[i]` names solver i.
ExperimentResult summarize(std::vector<SolveTrace> traces, const std::vector<Problem>& problems,
                           const std::vector<std::string>& solver_labels, const UsageMap& usage,
                           const PriceTable* prices, const ExperimentOptions& options, std::string strategy_name,
                           std::string threshold);

ExperimentResult run_experiment(const AdaptationStrategy& strategy, const EvaluationConfig& config,
                                const std::vector<Problem>& problems, Backend& backend, const PromptRegistry& prompts,
                                const PriceTable* prices, const ExperimentOptions& options);

/// Rounds `num / den * 100` half-up to `places` decimals.
Decimal percent(std::size_t num, std::size_t den, unsigned places);

/// Strategy with every self-consistent solver (sample_count > 1) set to `n` samples.
AdaptationStrategy with_sample_count(const AdaptationStrategy& strategy, int n);

struct SweepPoint {
    int n = 0;
    Decimal theta;
    Decimal cost;
    Decimal accuracy;
    Decimal avg_rounds;
    RelativePoint relative;
};

struct SweepResult {
    Decimal baseline_cost;
    Decimal baseline_accuracy;
    std::vector<SweepPoint> points;

    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] std::string render_table() const;
};

/// One run per (N, theta); each point is relative to a single baseline run.
SweepResult sweep_tradeoff(const AdaptationStrategy& strategy_template, const std::vector<int>& n_values,
                           const std::vector<Decimal>& theta_values, const std::vector<Problem>& problems,
                           Backend& backend, const PromptRegistry& prompts, const PriceTable& prices,
                           const AdaptationStrategy& baseline, const ExperimentOptions& options);

}  // namespace adasolve
