#include "adasolve/engine.hpp"

#include <thread>

#include "adasolve/evaluation.hpp"
#include "adasolve/extraction.hpp"

namespace adasolve {

namespace {

GenerationResult generate_with_retry(const SolveContext& ctx, const GenerationRequest& request) {
    for (int attempt = 0;; ++attempt) {
        try {
            auto result = ctx.backend.generate(request);
            if (result.size() != static_cast<std::size_t>(request.n)) {
                throw BackendError(BackendErrorKind::malformed_response, false,
                                   "backend returned " + std::to_string(result.size()) + " completions for n=" +
                                       std::to_string(request.n));
            }
            ctx.ledger.record(request.model_id,
                              [&] {
                                  long t = 0;
                                  for (const auto& c : result) t += c.prompt_tokens;
                                  return t;
                              }(),
                              [&] {
                                  long t = 0;
                                  for (const auto& c : result) t += c.completion_tokens;
                                  return t;
                              }());
            return result;
        } catch (const BackendError& e) {
            if (!e.retryable() || attempt >= ctx.retry.max_retries) throw;
            const auto delay = ctx.retry.base_delay * (1LL << attempt);
            if (ctx.retry.sleep) ctx.retry.sleep(delay);
            else std::this_thread::sleep_for(delay);
        }
    }
}

std::span<const Choice> choices_of(const Problem& p) {
    if (!p.choices) return {};
    return {p.choices->data(), p.choices->size()};
}

}  // namespace

std::size_t select_final_round(std::span<const RoundRecord> rounds, SelectionRule rule) {
    if (rounds.empty()) throw std::invalid_argument("select_final_round: no rounds");
    if (rule == SelectionRule::last_solver) return rounds.size() - 1;
    std::size_t best = 0;
    for (std::size_t i = 1; i < rounds.size(); ++i) {
        if (rounds[i].consistency >= rounds[best].consistency) best = i;
    }
    return best;
}

RoundRecord execute_round(const SolveContext& ctx, const Problem& problem, const SolverSpec& solver,
                          const MessageSequence& messages, std::size_t round_index, std::size_t solver_index) {
    GenerationRequest request;
    request.model_id = solver.model_id;
    request.messages = messages;
    request.temperature = solver.temperature;
    request.n = solver.sample_count;
    request.context = RequestContext{problem.id, round_index, 0, RequestPurpose::solve};
    const auto completions = generate_with_retry(ctx, request);

    const auto choices = choices_of(problem);
    RoundRecord round;
    round.solver_index = solver_index;
    std::vector<CanonicalAnswer> answers;
    for (std::size_t i = 0; i < completions.size(); ++i) {
        SampleRecord sample;
        sample.raw_text = completions[i].text;
        sample.prompt_tokens = completions[i].prompt_tokens;
        sample.completion_tokens = completions[i].completion_tokens;

        ExtractionResult extracted = sample.raw_text.empty()
                                         ? ExtractionResult{NeedsFallback{}}
                                         : extract_answer(sample.raw_text, problem.answer_kind, choices, i);
        if (std::holds_alternative<NeedsFallback>(extracted)) {
            GenerationRequest fallback;
            fallback.model_id = solver.model_id;
            fallback.messages = {Message{
                "user", build_fallback_prompt(format_question(problem.question, problem.family, choices), sample.raw_text)}};
            fallback.temperature = 0.0;
            fallback.n = 1;
            fallback.context = RequestContext{problem.id, round_index, i, RequestPurpose::fallback};
            const auto reply = generate_with_retry(ctx, fallback).front();
            sample.used_fallback = true;
            sample.fallback_text = reply.text;
            sample.prompt_tokens += reply.prompt_tokens;
            sample.completion_tokens += reply.completion_tokens;
            extracted = extract_answer(std::string(kFallbackSuffix) + reply.text, problem.answer_kind, choices, i);
        }
        sample.extracted = std::holds_alternative<CanonicalAnswer>(extracted) ? std::get<CanonicalAnswer>(extracted)
                                                                               : CanonicalAnswer::unparseable(i);
        answers.push_back(sample.extracted);
        round.samples.push_back(std::move(sample));
    }

    const auto vote = majority_vote(answers);
    round.aggregated = vote.winner;
    round.consistency = Ratio{static_cast<std::int64_t>(vote.count), static_cast<std::int64_t>(answers.size())};
    return round;
}

Decimal trace_cost(std::span<const RoundRecord> rounds, const std::vector<SolverSpec>& solvers_by_index,
                   const PriceTable& prices) {
    Decimal total;
    for (const auto& round : rounds) {
        ModelUsage usage;
        for (const auto& s : round.samples) {
            usage.prompt_tokens += s.prompt_tokens;
            usage.completion_tokens += s.completion_tokens;
        }
        total += usage_cost(usage, prices.at(solvers_by_index.at(round.solver_index).model_id));
    }
    return total;
}

void AdaptiveSolver::check_prompts(const AdaptationStrategy& strategy, DatasetFamily family) const {
    for (const auto& s : strategy.solvers()) {
        (void)ctx_.prompts.get(method_key(s.method), family);
        if (ctx_.prices) (void)ctx_.prices->at(s.model_id);
    }
}

SolveTrace AdaptiveSolver::solve(const Problem& problem, const AdaptationStrategy& strategy,
                                 const EvaluationConfig& config) const {
    config.validate(strategy);
    check_prompts(strategy, problem.family);

    SolveTrace trace;
    trace.problem_id = problem.id;
    trace.strategy = strategy.name();
    const std::size_t max_rounds = config.resolved_max_rounds(strategy);
    const auto choices = choices_of(problem);

    try {
        for (std::size_t r = 0; r < max_rounds; ++r) {
            const auto& solver = strategy.solvers()[r];
            const auto messages = ctx_.prompts.render_prompt(solver.method, problem.family, problem.question, choices);
            trace.rounds.push_back(execute_round(ctx_, problem, solver, messages, r, r));
            if (meets_criteria(trace.rounds.back().consistency, config.threshold)) {
                trace.termination = Termination::criteria_met;
                trace.chosen_round = r;
                break;
            }
        }
        if (!trace.chosen_round) {
            trace.termination = Termination::exhausted;
            trace.chosen_round = select_final_round(trace.rounds, strategy.selection_rule());
        }
        trace.final_answer = trace.rounds[*trace.chosen_round].aggregated;
    } catch (const BackendError& e) {
        trace.termination = Termination::aborted;
        trace.chosen_round.reset();
        trace.final_answer = CanonicalAnswer::unparseable(0);
        trace.error = e.what();
    }
    if (ctx_.prices) trace.total_cost = trace_cost(trace.rounds, strategy.solvers(), *ctx_.prices);
    return trace;
}

SolveTrace AdaptiveSolver::run_repeated(const Problem& problem, const SolverSpec& solver, std::size_t rounds,
                                        const EvaluationConfig& config) const {
    if (rounds < 1) throw ValidationError("run_repeated needs at least one round");
    EvaluationConfig cfg = config;
    cfg.max_rounds.reset();
    return solve(problem, repeated_strategy(solver, rounds), cfg);
}

AdaptationStrategy repeated_strategy(const SolverSpec& solver, std::size_t rounds) {
    return AdaptationStrategy("[" + solver.label() + "]x" + std::to_string(rounds),
                              std::vector<SolverSpec>(rounds, solver), SelectionRule::max_consistency_most_recent);
}

std::vector<std::string_view> builtin_strategy_names() { return {"A_M1", "A_M2", "A_P1", "A_P2", "A_D", "A_PD"}; }

AdaptationStrategy builtin_strategy(std::string_view name, const BuiltinModels& m) {
    using S = SolverSpec;
    const auto last = SelectionRule::last_solver;
    const auto most_consistent = SelectionRule::max_consistency_most_recent;
    if (name == "A_M1") {
        return {"A_M1", {S::self_consistent(m.weak, MethodId::zerocot), S::single(m.strong, MethodId::zerocot)}, last};
    }
    if (name == "A_M2") {
        return {"A_M2", {S::self_consistent(m.local, MethodId::zerocot), S::single(m.weak, MethodId::zerocot)}, last};
    }
    if (name == "A_P1") {
        return {"A_P1", {S::self_consistent(m.weak, MethodId::cot), S::self_consistent(m.weak, MethodId::l2m)}, last};
    }
    if (name == "A_P2") {
        return {"A_P2", {S::self_consistent(m.weak, MethodId::zerocot), S::self_consistent(m.weak, MethodId::ps)}, last};
    }
    if (name == "A_D") {
        return {"A_D",
                {S::self_consistent(m.weak, MethodId::l2m_d1), S::self_consistent(m.weak, MethodId::l2m_d2),
                 S::self_consistent(m.weak, MethodId::l2m_d3)},
                most_consistent};
    }
    if (name == "A_PD") {
        return {"A_PD",
                {S::self_consistent(m.weak, MethodId::cot), S::self_consistent(m.weak, MethodId::l2m_d1),
                 S::self_consistent(m.weak, MethodId::l2m_d2), S::self_consistent(m.weak, MethodId::l2m_d3)},
                most_consistent};
    }
    throw ValidationError("unknown built-in strategy '" + std::string(name) + "'");
}

}  // namespace adasolve
