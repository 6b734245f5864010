#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "adasolve/backend.hpp"
#include "adasolve/cost.hpp"
#include "adasolve/model.hpp"
#include "adasolve/prompts.hpp"

namespace adasolve {

/// Failed requests are retried `max_retries` times with exponential backoff
/// (base_delay, 2*base_delay, ...). Only retryable BackendErrors are retried.
struct RetryPolicy {
    int max_retries = 2;
    std::chrono::milliseconds base_delay{500};
    std::function<void(std::chrono::milliseconds)> sleep;  // defaults to std::this_thread::sleep_for
};

/// Picks the round whose answer is final once no round met the threshold.
/// last_solver -> last index; max_consistency_most_recent -> highest
/// consistency ratio, ties toward the later round. Precondition: non-empty.
std::size_t select_final_round(std::span<const RoundRecord> rounds, SelectionRule rule);

/// Shared services for solving. Holds references; callers own the objects.
struct SolveContext {
    Backend& backend;
    const PromptRegistry& prompts;
    CostLedger& ledger;
    const PriceTable* prices = nullptr;
    RetryPolicy retry{};
};

/// Runs one round: renders nothing itself, sends `messages` for `solver`,
/// extracts every sample (issuing the temperature-0 fallback call where the
/// completion has no answer marker) and votes. Throws BackendError once
/// retries are exhausted.
RoundRecord execute_round(const SolveContext& ctx, const Problem& problem, const SolverSpec& solver,
                          const MessageSequence& messages, std::size_t round_index, std::size_t solver_index);

/// Dollar cost of the tokens recorded in `rounds`, solver i billed at its model's price.
Decimal trace_cost(std::span<const RoundRecord> rounds, const std::vector<SolverSpec>& solvers_by_index,
                   const PriceTable& prices);

/// The adaptive loop: try solvers in order, stop at the first round whose
/// consistency meets the threshold, otherwise fall back to the selection
/// rule after max_rounds.
class AdaptiveSolver {
public:
    explicit AdaptiveSolver(SolveContext ctx) : ctx_(ctx) {}

    [[nodiscard]] SolveTrace solve(const Problem& problem, const AdaptationStrategy& strategy,
                                   const EvaluationConfig& config) const;

    /// Non-adaptive arm: the same solver up to `rounds` times, rule 2 selection.
    [[nodiscard]] SolveTrace run_repeated(const Problem& problem, const SolverSpec& solver, std::size_t rounds,
                                          const EvaluationConfig& config) const;

    /// Throws RegistryError unless every solver has a prompt for `family`.
    void check_prompts(const AdaptationStrategy& strategy, DatasetFamily family) const;

private:
    SolveContext ctx_;
};

struct BuiltinModels {
    std::string weak = "gpt-3.5-turbo";
    std::string strong = "gpt-4";
    std::string local = "glm2";
};

/// A_M1, A_M2, A_P1, A_P2, A_D, A_PD.
AdaptationStrategy builtin_strategy(std::string_view name, const BuiltinModels& models = {});
std::vector<std::string_view> builtin_strategy_names();

/// Strategy whose solver list repeats `solver` `rounds` times.
AdaptationStrategy repeated_strategy(const SolverSpec& solver, std::size_t rounds);

}  // namespace adasolve
