#include "adasolve/analysis.hpp"

#include <map>

#include <nlohmann/json.hpp>

#include "adasolve/dataset.hpp"
#include "adasolve/errors.hpp"
#include "adasolve/experiment.hpp"
#include "table.hpp"

namespace adasolve {

namespace {

std::map<std::string, const SolveTrace*> index_traces(const std::vector<SolveTrace>& traces, const char* which) {
    std::map<std::string, const SolveTrace*> out;
    for (const auto& t : traces) {
        if (!out.emplace(t.problem_id, &t).second) {
            throw ValidationError(std::string(which) + " traces contain duplicate id " + t.problem_id);
        }
    }
    return out;
}

const SolveTrace& trace_for(const std::map<std::string, const SolveTrace*>& traces, const std::string& id,
                            const char* which) {
    const auto it = traces.find(id);
    if (it == traces.end()) throw ValidationError(std::string(which) + " traces have no entry for " + id);
    return *it->second;
}

bool solved(const SolveTrace& t, const Problem& p) {
    return t.termination != Termination::aborted && grade(p.gold, t.final_answer);
}

}  // namespace

DifficultyBreakdown difficulty_breakdown(const std::vector<SolveTrace>& traces, const std::vector<Problem>& problems,
                                         std::size_t n_solvers, int top_bucket) {
    if (top_bucket < 1) throw ValidationError("top bucket must be >= 1");
    const auto by_id = index_traces(traces, "difficulty");
    DifficultyBreakdown out;
    struct Acc {
        std::size_t n = 0, correct = 0;
        std::vector<std::size_t> used;
    };
    std::map<int, Acc> acc;
    for (const auto& p : problems) {
        const auto& t = trace_for(by_id, p.id, "difficulty");
        if (!p.expected_steps) {
            ++out.missing_steps;
            continue;
        }
        auto& a = acc[std::min(*p.expected_steps, top_bucket)];
        a.used.resize(n_solvers, 0);
        ++a.n;
        a.correct += solved(t, p) ? 1 : 0;
        if (t.chosen_round) {
            const auto solver = t.rounds.at(*t.chosen_round).solver_index;
            if (solver >= n_solvers) throw ValidationError("trace " + t.problem_id + " uses unknown solver index");
            ++a.used[solver];
        }
    }
    for (const auto& [steps, a] : acc) {
        DifficultyBucket b;
        b.steps = steps;
        b.open_ended = steps == top_bucket;
        b.n = a.n;
        b.correct = a.correct;
        b.accuracy_percent = percent(a.correct, a.n, 1);
        for (auto u : a.used) b.usage_percent.push_back(percent(u, a.n, 1));
        out.buckets.push_back(std::move(b));
    }
    return out;
}

nlohmann::json DifficultyBreakdown::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& b : buckets) {
        nlohmann::json usage = nlohmann::json::array();
        for (const auto& u : b.usage_percent) usage.push_back(u.to_fixed(1));
        rows.push_back({{"steps", b.open_ended ? std::to_string(b.steps) + "+" : std::to_string(b.steps)},
                        {"n", b.n},
                        {"correct", b.correct},
                        {"accuracy_percent", b.accuracy_percent.to_fixed(1)},
                        {"usage_percent", usage}});
    }
    return {{"buckets", rows}, {"missing_steps", missing_steps}};
}

std::string DifficultyBreakdown::render_table() const {
    std::vector<detail::Row> rows{{"steps", "n", "accuracy", "usage%"}};
    for (const auto& b : buckets) {
        std::string usage;
        for (const auto& u : b.usage_percent) usage += (usage.empty() ? "" : " / ") + u.to_fixed(1);
        rows.push_back({std::to_string(b.steps) + (b.open_ended ? "+" : ""), std::to_string(b.n),
                        b.accuracy_percent.to_fixed(1), usage});
    }
    auto out = detail::format_table(rows);
    if (missing_steps > 0) out += "warning: " + std::to_string(missing_steps) + " problem(s) without expected steps skipped\n";
    return out;
}

std::string MethodGroup::name() const {
    return std::string("A") + (a_correct ? "+" : "-") + "B" + (b_correct ? "+" : "-");
}

Decimal MethodGroup::adaptive_percent() const {
    return problems == 0 ? Decimal(0) : percent(adaptive_correct, problems, 1);
}

std::array<MethodGroup, 4> cross_method_analysis(const std::vector<SolveTrace>& traces_a,
                                                 const std::vector<SolveTrace>& traces_b,
                                                 const std::vector<SolveTrace>& traces_adaptive,
                                                 const std::vector<Problem>& problems) {
    const auto a = index_traces(traces_a, "A");
    const auto b = index_traces(traces_b, "B");
    const auto ad = index_traces(traces_adaptive, "adaptive");
    if (a.size() != problems.size() || b.size() != problems.size() || ad.size() != problems.size()) {
        throw ValidationError("trace sets do not cover the same problems");
    }
    std::array<MethodGroup, 4> groups{};
    for (std::size_t g = 0; g < groups.size(); ++g) {
        groups[g].a_correct = g < 2;
        groups[g].b_correct = g % 2 == 0;
    }
    for (const auto& p : problems) {
        const bool ok_a = solved(trace_for(a, p.id, "A"), p);
        const bool ok_b = solved(trace_for(b, p.id, "B"), p);
        const auto& t = trace_for(ad, p.id, "adaptive");
        auto& g = groups[(ok_a ? 0 : 2) + (ok_b ? 0 : 1)];
        ++g.problems;
        g.adaptive_correct += solved(t, p) ? 1 : 0;
        if (t.chosen_round) {
            if (t.rounds.at(*t.chosen_round).solver_index == 0) ++g.used_a;
            else ++g.used_b;
        }
    }
    return groups;
}

nlohmann::json cross_method_json(const std::array<MethodGroup, 4>& groups) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& g : groups) {
        rows.push_back({{"group", g.name()},
                        {"problems", g.problems},
                        {"adaptive_correct", g.adaptive_correct},
                        {"adaptive_percent", g.adaptive_percent().to_fixed(1)},
                        {"used_a", g.used_a},
                        {"used_b", g.used_b}});
    }
    return rows;
}

std::string render_cross_method(const std::array<MethodGroup, 4>& groups) {
    std::vector<detail::Row> rows{{"group", "problems", "correct", "percent", "used_a", "used_b"}};
    for (const auto& g : groups) {
        rows.push_back({g.name(), std::to_string(g.problems), std::to_string(g.adaptive_correct),
                        g.adaptive_percent().to_fixed(1), std::to_string(g.used_a), std::to_string(g.used_b)});
    }
    return detail::format_table(rows);
}

}  // namespace adasolve
