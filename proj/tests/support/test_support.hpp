#pragma once

#include <functional>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "adasolve/backend.hpp"
#include "adasolve/cost.hpp"
#include "adasolve/model.hpp"
#include "adasolve/prompts.hpp"

namespace adasolve::fixtures {

std::string data_path(const std::string& relative);

/// Backend driven by a callback; records every request it sees.
class FunctionBackend final : public Backend {
public:
    using Handler = std::function<GenerationResult(const GenerationRequest&)>;
    explicit FunctionBackend(Handler handler) : handler_(std::move(handler)) {}

    GenerationResult generate(const GenerationRequest& request) override;

    [[nodiscard]] std::vector<GenerationRequest> requests() const;
    [[nodiscard]] std::size_t calls() const;

private:
    Handler handler_;
    mutable std::mutex mutex_;
    std::vector<GenerationRequest> log_;
};

/// n completions "... The answer is <a>." with 10 prompt / 5 completion tokens each.
GenerationResult say(const std::vector<std::string>& answers);

Problem number_problem(const std::string& id, long gold, std::optional<int> steps = std::nullopt);

PriceTable test_prices();

const PromptRegistry& registry();

std::string read_text(const std::string& path);

/// trace_line of each trace, newline-terminated, as written to a trace log.
std::string traces_text(const std::vector<SolveTrace>& traces);

/// The 12-problem scripted fixture, each problem solved under the strategy
/// named in the hand trace.
struct OrchestrationRun {
    std::vector<Problem> problems;
    std::vector<SolveTrace> traces;
    UsageMap usage;
};
OrchestrationRun run_orchestration_fixture(std::size_t workers = 1);

/// Empty when every trace agrees with hand_trace.json; otherwise the first
/// disagreement.
std::string compare_with_hand_trace(const std::vector<SolveTrace>& traces);

/// Two-solver synthetic: model "A" is unanimous and right exactly on S_A,
/// "B" on S_B; elsewhere each returns three distinct wrong answers.
struct UnionLift {
    std::vector<Problem> problems;
    std::set<std::string> s_a;
    std::set<std::string> s_b;
    AdaptationStrategy strategy;
    FunctionBackend backend;

    UnionLift();
};

/// Weak model "W" answers from a fixed per-(problem, sample) table that is
/// right about two times in three; strong model "S" is always right.
GenerationResult monotone_reply(const GenerationRequest& request, const std::vector<Problem>& problems);
std::vector<Problem> monotone_problems(std::size_t count);

}  // namespace adasolve::fixtures
