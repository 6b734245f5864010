#include "test_support.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "adasolve/dataset.hpp"
#include "adasolve/engine.hpp"
#include "adasolve/experiment.hpp"
#include "adasolve/scripted_backend.hpp"
#include "adasolve/serialize.hpp"

namespace adasolve::fixtures {

std::string data_path(const std::string& relative) { return std::string(ADASOLVE_TEST_DATA) + "/" + relative; }

GenerationResult FunctionBackend::generate(const GenerationRequest& request) {
    {
        std::lock_guard lock(mutex_);
        log_.push_back(request);
    }
    return handler_(request);
}

std::vector<GenerationRequest> FunctionBackend::requests() const {
    std::lock_guard lock(mutex_);
    return log_;
}

std::size_t FunctionBackend::calls() const {
    std::lock_guard lock(mutex_);
    return log_.size();
}

GenerationResult say(const std::vector<std::string>& answers) {
    GenerationResult out;
    for (const auto& a : answers) out.push_back({"Working through it. The answer is " + a + ".", 10, 5});
    return out;
}

Problem number_problem(const std::string& id, long gold, std::optional<int> steps) {
    Problem p;
    p.id = id;
    p.question = "Question " + id + "?";
    p.answer_kind = AnswerKind::number;
    p.gold = canonical_gold(std::to_string(gold), AnswerKind::number);
    p.family = DatasetFamily::math;
    p.expected_steps = steps;
    return p;
}

PriceTable test_prices() {
    return PriceTable({{"gpt-3.5-turbo", {Decimal::from_string("0.0015"), Decimal::from_string("0.002")}},
                       {"gpt-4", {Decimal::from_string("0.03"), Decimal::from_string("0.06")}},
                       {"glm2", {Decimal(0), Decimal(0)}},
                       {"A", {Decimal::from_string("0.001"), Decimal::from_string("0.002")}},
                       {"B", {Decimal::from_string("0.01"), Decimal::from_string("0.02")}},
                       {"W", {Decimal::from_string("0.001"), Decimal::from_string("0.002")}},
                       {"S", {Decimal::from_string("0.03"), Decimal::from_string("0.06")}}});
}

const PromptRegistry& registry() {
    static const PromptRegistry r = PromptRegistry::load_default();
    return r;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string traces_text(const std::vector<SolveTrace>& traces) {
    std::string out;
    for (const auto& t : traces) out += trace_line(t) + "\n";
    return out;
}

namespace {

nlohmann::json hand_trace() { return nlohmann::json::parse(read_text(data_path("orchestration/hand_trace.json"))); }

}  // namespace

OrchestrationRun run_orchestration_fixture(std::size_t workers) {
    OrchestrationRun run;
    run.problems = load_dataset(data_path("orchestration/problems.jsonl"));
    std::map<std::string, std::string> strategy_of;
    for (const auto& h : hand_trace()) strategy_of[h.at("problem_id")] = h.at("strategy");

    ScriptedBackend backend(read_fixtures(data_path("orchestration/fixture.jsonl")));
    CostLedger ledger;
    const auto prices = test_prices();
    const AdaptiveSolver solver(SolveContext{backend, registry(), ledger, &prices, {}});
    run.traces = solve_all(run.problems, workers, [&](const Problem& p) {
        return solver.solve(p, builtin_strategy(strategy_of.at(p.id)), EvaluationConfig{});
    });
    run.usage = ledger.snapshot();
    return run;
}

std::string compare_with_hand_trace(const std::vector<SolveTrace>& traces) {
    const auto expected = hand_trace();
    if (expected.size() != traces.size()) return "trace count differs from hand trace";
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const auto& h = expected[i];
        const auto& t = traces[i];
        const std::string where = "problem " + t.problem_id + ": ";
        if (h.at("problem_id") != t.problem_id) return where + "order differs";
        if (h.at("strategy") != t.strategy) return where + "strategy";
        if (h.at("termination") != std::string(to_string(t.termination))) return where + "termination";
        if (!t.chosen_round || h.at("chosen_round") != *t.chosen_round) return where + "chosen round";
        if (h.at("final") != t.final_answer.render()) return where + "final answer " + t.final_answer.render();
        if (h.at("total_cost") != t.total_cost.to_string()) return where + "cost " + t.total_cost.to_string();
        const auto& rounds = h.at("rounds");
        if (rounds.size() != t.rounds.size()) return where + "round count";
        for (std::size_t r = 0; r < rounds.size(); ++r) {
            const auto& hr = rounds[r];
            const auto& tr = t.rounds[r];
            const std::string at = where + "round " + std::to_string(r) + ": ";
            if (hr.at("solver") != tr.solver_index) return at + "solver";
            if (hr.at("consistency") != tr.consistency.to_string()) return at + "consistency " + tr.consistency.to_string();
            if (hr.at("aggregated") != tr.aggregated.render()) return at + "aggregated";
            if (hr.at("answers").size() != tr.samples.size()) return at + "sample count";
            for (std::size_t s = 0; s < tr.samples.size(); ++s) {
                if (hr.at("answers")[s] != tr.samples[s].extracted.render()) return at + "answer " + std::to_string(s);
                if (hr.at("used_fallback")[s] != tr.samples[s].used_fallback) return at + "fallback " + std::to_string(s);
            }
        }
    }
    return {};
}

UnionLift::UnionLift()
    : strategy("A_then_B", {SolverSpec::self_consistent("A", MethodId::cot), SolverSpec::self_consistent("B", MethodId::cot)},
               SelectionRule::last_solver),
      backend([this](const GenerationRequest& r) {
          const auto& id = r.context.problem_id;
          const long gold = std::stol(id.substr(1));
          const bool right = (r.model_id == "A" && s_a.contains(id)) || (r.model_id == "B" && s_b.contains(id));
          std::vector<std::string> answers;
          for (int i = 0; i < r.n; ++i) answers.push_back(std::to_string(right ? gold : 1000 + gold * 10 + i));
          return say(answers);
      }) {
    for (int i = 0; i < 40; ++i) {
        const auto id = "u" + std::to_string(i);
        problems.push_back(number_problem(id, i));
        if (i < 20) s_a.insert(id);
        if (i >= 12 && i < 30) s_b.insert(id);
    }
}

std::vector<Problem> monotone_problems(std::size_t count) {
    std::vector<Problem> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(number_problem("m" + std::to_string(i), static_cast<long>(i), 1 + static_cast<int>(i % 6)));
    return out;
}

GenerationResult monotone_reply(const GenerationRequest& r, const std::vector<Problem>&) {
    const long gold = std::stol(r.context.problem_id.substr(1));
    std::vector<std::string> answers;
    for (int i = 0; i < r.n; ++i) {
        if (r.model_id == "S") {
            answers.push_back(std::to_string(gold));
            continue;
        }
        const auto sample = static_cast<long>(r.context.sample) + i;
        const long h = (gold * 7 + sample * 13 + gold * sample) % 9;
        answers.push_back(std::to_string(h < 6 ? gold : gold + 1 + h % 2));
    }
    return say(answers);
}

}  // namespace adasolve::fixtures
