#pragma once

#include <cstddef>
#include <string>

#include "adasolve/engine.hpp"

namespace adasolve {

/// Progressive-hint baseline. Round 0 is plain CoT at temperature 0; later
/// rounds hint with every earlier parseable answer. Stops once two
/// consecutive rounds agree (criteria_met) or after max_rounds (exhausted).
/// Round solver_index is 0 for the CoT turn and 1 for hinted turns.
SolveTrace php_solve(const SolveContext& ctx, const Problem& problem, const std::string& model_id,
                     std::size_t max_rounds);

}  // namespace adasolve
