#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "adasolve/answer.hpp"
#include "adasolve/model.hpp"

namespace adasolve {

/// Marker appended to the fallback prompt.
inline constexpr std::string_view kFallbackSuffix = "Therefore, the answer is";

struct NeedsFallback {};

/// Found(answer) or NeedsFallback. NeedsFallback means no "answer is" marker was seen.
using ExtractionResult = std::variant<CanonicalAnswer, NeedsFallback>;

/// Parses the answer stated after the last case-insensitive "answer is".
///
/// `choices` restricts option letters (a-e when empty). `ordinal` tags the
/// Unparseable value returned when the marker is present but nothing after
/// it parses. Total: never throws on any input.
ExtractionResult extract_answer(std::string_view text, AnswerKind kind, std::span<const Choice> choices = {},
                                std::size_t ordinal = 0);

/// "$3.00" -> 3, "1,234" -> 1234, "56 years" -> 56. nullopt when there is no digit.
std::optional<Decimal> canonicalize_number(std::string_view token);

/// question + "\n" + response + "\nTherefore, the answer is".
std::string build_fallback_prompt(std::string_view question, std::string_view response);

struct VoteResult {
    CanonicalAnswer winner;
    std::size_t count;
    bool tied;
};

/// Most frequent answer; ties go to the earliest sample (parseable answers
/// before Unparseable ones). Unparseable answers count 1 each.
/// Precondition: answers non-empty.
VoteResult majority_vote(std::span<const CanonicalAnswer> answers);

/// Number of enumerated sub-questions ("1. ... 2. ...") following the
/// "break down this problem" header; 0 without a header.
std::size_t count_subquestions(std::string_view text);

}  // namespace adasolve
