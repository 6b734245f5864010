#include "adasolve/model.hpp"

#include <algorithm>
#include <sstream>

#include "adasolve/errors.hpp"

namespace adasolve {

std::string_view to_string(DatasetFamily family) {
    switch (family) {
        case DatasetFamily::math: return "math";
        case DatasetFamily::math_choices: return "math_choices";
        case DatasetFamily::commonsense: return "commonsense";
        case DatasetFamily::symbolic: return "symbolic";
    }
    return "?";
}

DatasetFamily parse_dataset_family(std::string_view text) {
    for (auto f : {DatasetFamily::math, DatasetFamily::math_choices, DatasetFamily::commonsense,
                   DatasetFamily::symbolic}) {
        if (to_string(f) == text) return f;
    }
    throw ValidationError("unknown dataset family '" + std::string(text) + "'");
}

std::string_view to_string(MethodId method) {
    switch (method) {
        case MethodId::zerocot: return "zerocot";
        case MethodId::ps: return "ps";
        case MethodId::cot: return "cot";
        case MethodId::l2m: return "l2m";
        case MethodId::l2m_d1: return "l2m_d1";
        case MethodId::l2m_d2: return "l2m_d2";
        case MethodId::l2m_d3: return "l2m_d3";
    }
    return "?";
}

MethodId parse_method(std::string_view text) {
    for (auto m : {MethodId::zerocot, MethodId::ps, MethodId::cot, MethodId::l2m, MethodId::l2m_d1, MethodId::l2m_d2,
                   MethodId::l2m_d3}) {
        if (to_string(m) == text) return m;
    }
    throw ValidationError("unknown prompting method '" + std::string(text) + "'");
}

bool is_decomposition(MethodId method) {
    return method == MethodId::l2m || method == MethodId::l2m_d1 || method == MethodId::l2m_d2 ||
           method == MethodId::l2m_d3;
}

std::optional<std::string> validate_problem(const Problem& p) {
    if (p.id.empty()) return "problem id is empty";
    if (p.question.empty()) return "problem " + p.id + ": question is empty";
    const bool is_option = p.answer_kind == AnswerKind::option;
    if (is_option != p.choices.has_value()) {
        return "problem " + p.id + (is_option ? ": option answer requires choices" : ": choices given for a non-option answer");
    }
    if (p.gold.is_unparseable()) return "problem " + p.id + ": gold answer is unparseable";
    switch (p.answer_kind) {
        case AnswerKind::number:
            if (!p.gold.is_number()) return "problem " + p.id + ": gold is not a number";
            break;
        case AnswerKind::string:
            if (!p.gold.is_text()) return "problem " + p.id + ": gold is not a string";
            break;
        case AnswerKind::option: {
            if (!p.gold.is_option()) return "problem " + p.id + ": gold is not an option letter";
            if (p.choices->empty()) return "problem " + p.id + ": choices are empty";
            for (std::size_t i = 0; i < p.choices->size(); ++i) {
                const char c = (*p.choices)[i].letter;
                if (c < 'a' || c > 'e') return "problem " + p.id + ": choice letter out of range a-e";
                for (std::size_t j = 0; j < i; ++j) {
                    if ((*p.choices)[j].letter == c) return "problem " + p.id + ": duplicate choice letter";
                }
            }
            const char g = p.gold.as_option();
            const bool listed = std::any_of(p.choices->begin(), p.choices->end(),
                                            [g](const Choice& c) { return c.letter == g; });
            if (!listed) return "problem " + p.id + ": gold letter (" + std::string(1, g) + ") is not among the choices";
            break;
        }
    }
    if (p.expected_steps && *p.expected_steps < 1) {
        return "problem " + p.id + ": expected_steps must be >= 1";
    }
    return std::nullopt;
}

SolverSpec SolverSpec::self_consistent(std::string model, MethodId method) {
    return SolverSpec{std::move(model), method, 3, 0.7};
}

SolverSpec SolverSpec::single(std::string model, MethodId method) {
    return SolverSpec{std::move(model), method, 1, 0.0};
}

std::string SolverSpec::label() const {
    std::ostringstream out;
    out << model_id << '/' << to_string(method);
    if (sample_count > 1) out << '*';
    return out.str();
}

std::string_view to_string(SelectionRule rule) {
    switch (rule) {
        case SelectionRule::last_solver: return "last_solver";
        case SelectionRule::max_consistency_most_recent: return "max_consistency_most_recent";
    }
    return "?";
}

SelectionRule parse_selection_rule(std::string_view text) {
    if (text == "last_solver") return SelectionRule::last_solver;
    if (text == "max_consistency_most_recent") return SelectionRule::max_consistency_most_recent;
    throw ValidationError("unknown selection rule '" + std::string(text) + "'");
}

AdaptationStrategy::AdaptationStrategy(std::string name, std::vector<SolverSpec> solvers, SelectionRule rule)
    : name_(std::move(name)), solvers_(std::move(solvers)), rule_(rule) {
    if (solvers_.empty()) throw ValidationError("strategy '" + name_ + "' has no solvers");
    for (const auto& s : solvers_) {
        if (s.model_id.empty()) throw ValidationError("strategy '" + name_ + "': solver without model id");
        if (s.sample_count < 1) throw ValidationError("strategy '" + name_ + "': sample_count must be >= 1");
        if (!(s.temperature >= 0.0)) throw ValidationError("strategy '" + name_ + "': temperature must be >= 0");
    }
}

void EvaluationConfig::validate(const AdaptationStrategy& strategy) const {
    if (threshold <= Decimal(0) || threshold > Decimal(1)) {
        throw ValidationError("threshold must lie in (0, 1], got " + threshold.to_string());
    }
    if (max_rounds) {
        if (*max_rounds < 1) throw ValidationError("max_rounds must be >= 1");
        if (*max_rounds > strategy.size()) {
            throw ValidationError("max_rounds " + std::to_string(*max_rounds) + " exceeds strategy length " +
                                  std::to_string(strategy.size()));
        }
    }
}

std::string_view to_string(Termination termination) {
    switch (termination) {
        case Termination::criteria_met: return "criteria_met";
        case Termination::exhausted: return "exhausted";
        case Termination::aborted: return "aborted";
    }
    return "?";
}

Termination parse_termination(std::string_view text) {
    if (text == "criteria_met") return Termination::criteria_met;
    if (text == "exhausted") return Termination::exhausted;
    if (text == "aborted") return Termination::aborted;
    throw ValidationError("unknown termination '" + std::string(text) + "'");
}

}  // namespace adasolve
