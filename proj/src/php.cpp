#include "adasolve/php.hpp"

#include "adasolve/errors.hpp"

namespace adasolve {

SolveTrace php_solve(const SolveContext& ctx, const Problem& problem, const std::string& model_id,
                     std::size_t max_rounds) {
    if (max_rounds < 2) throw ValidationError("php needs max_rounds >= 2");
    const auto solver = SolverSpec::single(model_id, MethodId::cot);
    std::span<const Choice> choices;
    if (problem.choices) choices = {problem.choices->data(), problem.choices->size()};
    if (ctx.prices) (void)ctx.prices->at(model_id);

    SolveTrace trace;
    trace.problem_id = problem.id;
    trace.strategy = "PHP(" + model_id + ")";
    trace.termination = Termination::exhausted;
    std::vector<CanonicalAnswer> hints;
    try {
        for (std::size_t r = 0; r < max_rounds; ++r) {
            const auto messages = ctx.prompts.render_php_prompt(problem.question, hints, problem.family, choices);
            trace.rounds.push_back(execute_round(ctx, problem, solver, messages, r, r == 0 ? 0 : 1));
            const auto& answer = trace.rounds.back().aggregated;
            if (r > 0 && agrees(trace.rounds[r - 1].aggregated, answer)) {
                trace.termination = Termination::criteria_met;
                break;
            }
            if (!answer.is_unparseable()) hints.push_back(answer);
        }
        trace.chosen_round = trace.rounds.size() - 1;
        trace.final_answer = trace.rounds.back().aggregated;
    } catch (const BackendError& e) {
        trace.termination = Termination::aborted;
        trace.chosen_round.reset();
        trace.final_answer = CanonicalAnswer::unparseable(0);
        trace.error = e.what();
    }
    if (ctx.prices) trace.total_cost = trace_cost(trace.rounds, {solver, solver}, *ctx.prices);
    return trace;
}

}  // namespace adasolve
