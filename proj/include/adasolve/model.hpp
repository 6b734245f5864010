#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adasolve/answer.hpp"
#include "adasolve/decimal.hpp"

namespace adasolve {

enum class DatasetFamily { math, math_choices, commonsense, symbolic };

std::string_view to_string(DatasetFamily family);
DatasetFamily parse_dataset_family(std::string_view text);

enum class MethodId { zerocot, ps, cot, l2m, l2m_d1, l2m_d2, l2m_d3 };

std::string_view to_string(MethodId method);
MethodId parse_method(std::string_view text);
bool is_decomposition(MethodId method);

struct Choice {
    char letter;
    std::string text;
};

struct Problem {
    std::string id;
    std::string question;
    AnswerKind answer_kind = AnswerKind::number;
    CanonicalAnswer gold = CanonicalAnswer::unparseable(0);
    std::optional<std::vector<Choice>> choices;
    std::optional<int> expected_steps;
    DatasetFamily family = DatasetFamily::math;
};

/// Returns a description of the first violated invariant, or nullopt when valid.
std::optional<std::string> validate_problem(const Problem& problem);

/// One solver: model, prompting method (granularity folded into l2m_d*),
/// sample count and temperature.
struct SolverSpec {
    std::string model_id;
    MethodId method = MethodId::cot;
    int sample_count = 1;
    double temperature = 0.0;

    /// Starred variant: 3 samples at temperature 0.7.
    static SolverSpec self_consistent(std::string model, MethodId method);
    /// Greedy single-solution variant.
    static SolverSpec single(std::string model, MethodId method);

    /// e.g. "gpt-4/zerocot" or "gpt-3.5-turbo/l2m_d1*".
    [[nodiscard]] std::string label() const;

    friend bool operator==(const SolverSpec&, const SolverSpec&) = default;
};

enum class SelectionRule { last_solver, max_consistency_most_recent };

std::string_view to_string(SelectionRule rule);
SelectionRule parse_selection_rule(std::string_view text);

/// Ordered solver list plus the rule that picks the final round when no
/// round meets the threshold. Immutable after construction.
class AdaptationStrategy {
public:
    AdaptationStrategy(std::string name, std::vector<SolverSpec> solvers, SelectionRule rule);

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const std::vector<SolverSpec>& solvers() const { return solvers_; }
    [[nodiscard]] SelectionRule selection_rule() const { return rule_; }
    [[nodiscard]] std::size_t size() const { return solvers_.size(); }

private:
    std::string name_;
    std::vector<SolverSpec> solvers_;
    SelectionRule rule_;
};

struct EvaluationConfig {
    Decimal threshold = Decimal(1);
    std::optional<std::size_t> max_rounds;

    /// Checks threshold in (0, 1] and max_rounds in [1, strategy size].
    void validate(const AdaptationStrategy& strategy) const;
    [[nodiscard]] std::size_t resolved_max_rounds(const AdaptationStrategy& strategy) const {
        return max_rounds.value_or(strategy.size());
    }
};

struct SampleRecord {
    std::string raw_text;
    CanonicalAnswer extracted = CanonicalAnswer::unparseable(0);
    long prompt_tokens = 0;
    long completion_tokens = 0;
    bool used_fallback = false;
    std::optional<std::string> fallback_text;
};

struct RoundRecord {
    std::size_t solver_index = 0;
    std::vector<SampleRecord> samples;
    Ratio consistency;
    CanonicalAnswer aggregated = CanonicalAnswer::unparseable(0);
};

enum class Termination { criteria_met, exhausted, aborted };

std::string_view to_string(Termination termination);
Termination parse_termination(std::string_view text);

struct SolveTrace {
    std::string problem_id;
    std::string strategy;
    std::vector<RoundRecord> rounds;
    /// Unset only for aborted traces that never completed a round.
    std::optional<std::size_t> chosen_round;
    CanonicalAnswer final_answer = CanonicalAnswer::unparseable(0);
    Termination termination = Termination::exhausted;
    Decimal total_cost;
    std::optional<std::string> error;
};

}  // namespace adasolve
