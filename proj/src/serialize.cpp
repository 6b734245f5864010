#include "adasolve/serialize.hpp"

#include <fstream>

#include "adasolve/errors.hpp"

namespace adasolve {

using nlohmann::json;

Decimal decimal_from_json(const json& j) {
    if (j.is_string()) return Decimal::from_string(j.get<std::string>());
    if (j.is_number()) return Decimal::from_string(j.dump());
    throw ParseError("expected a decimal number, got " + j.dump());
}

json to_json(const CanonicalAnswer& a) {
    if (a.is_number()) return {{"kind", "number"}, {"value", a.as_number().to_string()}};
    if (a.is_option()) return {{"kind", "option"}, {"value", std::string(1, a.as_option())}};
    if (a.is_text()) return {{"kind", "string"}, {"value", a.as_text()}};
    return {{"kind", "unparseable"}, {"ordinal", a.ordinal()}};
}

CanonicalAnswer answer_from_json(const json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "number") return CanonicalAnswer::number(Decimal::from_string(j.at("value").get<std::string>()));
    if (kind == "option") {
        const auto v = j.at("value").get<std::string>();
        if (v.size() != 1) throw ParseError("option answer must be one letter");
        return CanonicalAnswer::option(v[0]);
    }
    if (kind == "string") return CanonicalAnswer::text(j.at("value").get<std::string>());
    if (kind == "unparseable") return CanonicalAnswer::unparseable(j.at("ordinal").get<std::size_t>());
    throw ParseError("unknown answer kind '" + kind + "'");
}

json to_json(const SolverSpec& s) {
    return {{"model", s.model_id}, {"method", std::string(to_string(s.method))}, {"samples", s.sample_count},
            {"temperature", s.temperature}};
}

SolverSpec solver_from_json(const json& j) {
    SolverSpec s;
    s.model_id = j.at("model").get<std::string>();
    s.method = parse_method(j.at("method").get<std::string>());
    s.sample_count = j.value("samples", 1);
    s.temperature = j.value("temperature", 0.0);
    return s;
}

json to_json(const AdaptationStrategy& st) {
    json solvers = json::array();
    for (const auto& s : st.solvers()) solvers.push_back(to_json(s));
    return {{"name", st.name()}, {"selection_rule", std::string(to_string(st.selection_rule()))}, {"solvers", solvers}};
}

AdaptationStrategy strategy_from_json(const json& j) {
    std::vector<SolverSpec> solvers;
    for (const auto& s : j.at("solvers")) solvers.push_back(solver_from_json(s));
    return AdaptationStrategy(j.value("name", std::string("custom")), std::move(solvers),
                              parse_selection_rule(j.value("selection_rule", std::string("last_solver"))));
}

json to_json(const RoundRecord& r) {
    json samples = json::array();
    for (const auto& s : r.samples) {
        json js = {{"raw_text", s.raw_text},
                   {"extracted", to_json(s.extracted)},
                   {"prompt_tokens", s.prompt_tokens},
                   {"completion_tokens", s.completion_tokens},
                   {"used_fallback", s.used_fallback}};
        if (s.fallback_text) js["fallback_text"] = *s.fallback_text;
        samples.push_back(std::move(js));
    }
    return {{"solver_index", r.solver_index},
            {"samples", samples},
            {"consistency", r.consistency.to_string()},
            {"aggregated", to_json(r.aggregated)}};
}

namespace {

Ratio ratio_from_string(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) throw ParseError("consistency must look like k/n, got '" + s + "'");
    Ratio r{std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
    if (r.total <= 0 || r.count < 0 || r.count > r.total) throw ParseError("bad consistency ratio '" + s + "'");
    return r;
}

}  // namespace

RoundRecord round_from_json(const json& j) {
    RoundRecord r;
    r.solver_index = j.at("solver_index").get<std::size_t>();
    for (const auto& js : j.at("samples")) {
        SampleRecord s;
        s.raw_text = js.at("raw_text").get<std::string>();
        s.extracted = answer_from_json(js.at("extracted"));
        s.prompt_tokens = js.at("prompt_tokens").get<long>();
        s.completion_tokens = js.at("completion_tokens").get<long>();
        s.used_fallback = js.at("used_fallback").get<bool>();
        if (js.contains("fallback_text")) s.fallback_text = js.at("fallback_text").get<std::string>();
        r.samples.push_back(std::move(s));
    }
    r.consistency = ratio_from_string(j.at("consistency").get<std::string>());
    r.aggregated = answer_from_json(j.at("aggregated"));
    return r;
}

json to_json(const SolveTrace& t) {
    json rounds = json::array();
    for (const auto& r : t.rounds) rounds.push_back(to_json(r));
    json j = {{"problem_id", t.problem_id},
              {"strategy", t.strategy},
              {"rounds", rounds},
              {"chosen_round", t.chosen_round ? json(*t.chosen_round) : json(nullptr)},
              {"final_answer", to_json(t.final_answer)},
              {"termination", std::string(to_string(t.termination))},
              {"total_cost", t.total_cost.to_string()}};
    if (t.error) j["error"] = *t.error;
    return j;
}

SolveTrace trace_from_json(const json& j) {
    SolveTrace t;
    t.problem_id = j.at("problem_id").get<std::string>();
    t.strategy = j.value("strategy", std::string());
    for (const auto& r : j.at("rounds")) t.rounds.push_back(round_from_json(r));
    if (!j.at("chosen_round").is_null()) t.chosen_round = j.at("chosen_round").get<std::size_t>();
    t.final_answer = answer_from_json(j.at("final_answer"));
    t.termination = parse_termination(j.at("termination").get<std::string>());
    t.total_cost = Decimal::from_string(j.at("total_cost").get<std::string>());
    if (j.contains("error")) t.error = j.at("error").get<std::string>();
    return t;
}

std::string trace_line(const SolveTrace& trace) { return to_json(trace).dump(); }

void write_traces(const std::filesystem::path& path, const std::vector<SolveTrace>& traces) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    for (const auto& t : traces) out << trace_line(t) << '\n';
}

std::vector<SolveTrace> read_traces(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open trace log " + path.string());
    std::vector<SolveTrace> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(trace_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw ParseError(std::string("trace record: ") + e.what(), line_no);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    return out;
}

StrategyFile strategy_file_from_json(const json& j) {
    try {
        StrategyFile f{strategy_from_json(j), EvaluationConfig{}};
        if (j.contains("threshold")) f.config.threshold = decimal_from_json(j.at("threshold"));
        if (j.contains("max_rounds") && !j.at("max_rounds").is_null()) {
            f.config.max_rounds = j.at("max_rounds").get<std::size_t>();
        }
        f.config.validate(f.strategy);
        return f;
    } catch (const json::exception& e) {
        throw ParseError(std::string("strategy file: ") + e.what());
    }
}

StrategyFile load_strategy_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open strategy file " + path.string());
    try {
        return strategy_file_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

json to_json(const StrategyFile& f) {
    json j = to_json(f.strategy);
    j["threshold"] = f.config.threshold.to_string();
    j["max_rounds"] = f.config.max_rounds ? json(*f.config.max_rounds) : json(nullptr);
    return j;
}

}  // namespace adasolve
