#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "adasolve/model.hpp"

namespace adasolve {

/// Reads line-delimited records {id, question, answer, kind, choices?,
/// n_steps?, family?}. choices is an object {"a": "33", ...}; family
/// defaults from kind (number->math, option->math_choices,
/// string->symbolic). Gold answers go through the grading canonicalizer.
/// Throws ParseError carrying the offending line.
std::vector<Problem> load_dataset(const std::filesystem::path& path,
                                  std::optional<DatasetFamily> family_override = std::nullopt);

/// Canonical gold answer for a raw dataset string.
CanonicalAnswer canonical_gold(const std::string& raw, AnswerKind kind);

/// Number: exact, else within 1e-6 relative. Option: same letter. String:
/// normalized equality. Unparseable answers are never correct.
bool grade(const CanonicalAnswer& gold, const CanonicalAnswer& answer);

}  // namespace adasolve
