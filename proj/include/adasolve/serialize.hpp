#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "adasolve/answer.hpp"
#include "adasolve/model.hpp"

namespace adasolve {

nlohmann::json to_json(const CanonicalAnswer& answer);
CanonicalAnswer answer_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SolverSpec& solver);
SolverSpec solver_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AdaptationStrategy& strategy);
AdaptationStrategy strategy_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RoundRecord& round);
RoundRecord round_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SolveTrace& trace);
SolveTrace trace_from_json(const nlohmann::json& j);

/// Compact single-line rendering; object keys sorted, so output is stable.
std::string trace_line(const SolveTrace& trace);

void write_traces(const std::filesystem::path& path, const std::vector<SolveTrace>& traces);
std::vector<SolveTrace> read_traces(const std::filesystem::path& path);

/// Strategy file: {"name", "selection_rule", "solvers": [{"model", "method",
/// "samples", "temperature"}], "threshold"?, "max_rounds"?}.
struct StrategyFile {
    AdaptationStrategy strategy;
    EvaluationConfig config;
};

StrategyFile strategy_file_from_json(const nlohmann::json& j);
StrategyFile load_strategy_file(const std::filesystem::path& path);
nlohmann::json to_json(const StrategyFile& file);

/// Reads a JSON number or numeric string as an exact decimal.
Decimal decimal_from_json(const nlohmann::json& j);

}  // namespace adasolve
