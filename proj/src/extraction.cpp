#include "adasolve/extraction.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace adasolve {

namespace {

constexpr std::string_view kAnswerMarker = "answer is";
constexpr std::string_view kDecompositionMarker = "break down this problem";

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::optional<CanonicalAnswer> parse_option(std::string_view rest, std::span<const Choice> choices) {
    auto valid = [&](char c) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (choices.empty()) return c >= 'a' && c <= 'e';
        return std::any_of(choices.begin(), choices.end(), [c](const Choice& ch) { return ch.letter == c; });
    };
    for (std::size_t i = 0; i < rest.size(); ++i) {
        if (rest[i] == '(' && i + 2 < rest.size() && rest[i + 2] == ')' && valid(rest[i + 1])) {
            return CanonicalAnswer::option(rest[i + 1]);
        }
        const bool left_ok = i == 0 || !is_alnum(rest[i - 1]);
        const bool right_ok = i + 1 == rest.size() || !is_alnum(rest[i + 1]);
        if (std::isalpha(static_cast<unsigned char>(rest[i])) && left_ok && right_ok && valid(rest[i])) {
            return CanonicalAnswer::option(rest[i]);
        }
    }
    return std::nullopt;
}

std::optional<CanonicalAnswer> parse_text(std::string_view rest) {
    struct Quote {
        std::string_view open, close;
    };
    static constexpr Quote kQuotes[] = {{"\"", "\""}, {"“", "”"}};
    std::size_t best = std::string_view::npos;
    std::string_view span;
    for (const auto& q : kQuotes) {
        const auto open = rest.find(q.open);
        if (open == std::string_view::npos || open >= best) continue;
        const auto close = rest.find(q.close, open + q.open.size());
        if (close == std::string_view::npos) continue;
        best = open;
        span = rest.substr(open + q.open.size(), close - open - q.open.size());
    }
    if (best == std::string_view::npos) {
        std::size_t i = 0;
        while (i < rest.size() && is_space(rest[i])) ++i;
        std::size_t j = i;
        while (j < rest.size() && !is_space(rest[j])) ++j;
        span = rest.substr(i, j - i);
    }
    std::string normalized = normalize_text_answer(span);
    if (normalized.empty()) return std::nullopt;
    return CanonicalAnswer::text(normalized);
}

}  // namespace

std::optional<Decimal> canonicalize_number(std::string_view token) {
    std::size_t start = 0;
    while (start < token.size() && !is_digit(token[start])) ++start;
    if (start == token.size()) return std::nullopt;

    bool negative = false;
    for (std::size_t k = start; k > 0; --k) {
        const char c = token[k - 1];
        if (c == '$') continue;
        negative = c == '-' && (k == 1 || !is_alnum(token[k - 2]));
        break;
    }

    auto thousands_group = [&](std::size_t comma) {
        return comma + 3 < token.size() && is_digit(token[comma + 1]) && is_digit(token[comma + 2]) &&
               is_digit(token[comma + 3]) && (comma + 4 == token.size() || !is_digit(token[comma + 4]));
    };

    std::string digits;
    std::size_t i = start;
    bool seen_point = false;
    while (i < token.size()) {
        const char c = token[i];
        if (is_digit(c)) {
            digits.push_back(c);
            ++i;
        } else if (c == ',' && !seen_point && thousands_group(i)) {
            ++i;  // thousands separator
        } else if (c == '.' && !seen_point && i + 1 < token.size() && is_digit(token[i + 1])) {
            seen_point = true;
            digits.push_back('.');
            ++i;
        } else {
            break;
        }
    }
    auto value = Decimal::parse(digits);
    if (!value) return std::nullopt;
    return negative ? -*value : *value;
}

ExtractionResult extract_answer(std::string_view text, AnswerKind kind, std::span<const Choice> choices,
                                std::size_t ordinal) {
    const std::string lower = lowercase(text);
    const auto pos = lower.rfind(kAnswerMarker);
    if (pos == std::string::npos) return NeedsFallback{};
    const std::string_view rest = text.substr(pos + kAnswerMarker.size());

    std::optional<CanonicalAnswer> found;
    switch (kind) {
        case AnswerKind::number:
            if (auto d = canonicalize_number(rest)) found = CanonicalAnswer::number(*d);
            break;
        case AnswerKind::option:
            found = parse_option(rest, choices);
            break;
        case AnswerKind::string:
            found = parse_text(rest);
            break;
    }
    if (!found) return CanonicalAnswer::unparseable(ordinal);
    return *found;
}

std::string build_fallback_prompt(std::string_view question, std::string_view response) {
    std::string out;
    out.reserve(question.size() + response.size() + kFallbackSuffix.size() + 2);
    out.append(question).append("\n").append(response).append("\n").append(kFallbackSuffix);
    return out;
}

VoteResult majority_vote(std::span<const CanonicalAnswer> answers) {
    if (answers.empty()) throw std::invalid_argument("majority_vote: no answers");
    std::vector<std::size_t> counts(answers.size(), 0);
    for (std::size_t i = 0; i < answers.size(); ++i) {
        counts[i] = answers[i].is_unparseable()
                        ? 1
                        : static_cast<std::size_t>(std::count_if(answers.begin(), answers.end(), [&](const auto& a) {
                              return agrees(answers[i], a);
                          }));
    }
    const std::size_t best = *std::max_element(counts.begin(), counts.end());

    std::optional<std::size_t> winner;
    std::size_t distinct_modes = 0;
    for (std::size_t i = 0; i < answers.size(); ++i) {
        if (counts[i] != best) continue;
        const bool first_of_kind = std::none_of(answers.begin(), answers.begin() + static_cast<std::ptrdiff_t>(i),
                                                [&](const auto& a) { return agrees(answers[i], a); });
        if (!first_of_kind) continue;
        ++distinct_modes;
        if (!winner || (answers[*winner].is_unparseable() && !answers[i].is_unparseable())) winner = i;
    }
    return VoteResult{answers[*winner], best, distinct_modes > 1};
}

std::size_t count_subquestions(std::string_view text) {
    const std::string lower = lowercase(text);
    const auto pos = lower.find(kDecompositionMarker);
    if (pos == std::string::npos) return 0;
    std::string_view header = text.substr(pos + kDecompositionMarker.size());
    if (const auto blank = header.find("\n\n"); blank != std::string_view::npos) header = header.substr(0, blank);

    std::size_t expected = 1;
    std::size_t i = 0;
    while (i < header.size()) {
        const bool boundary = i == 0 || is_space(header[i - 1]) || header[i - 1] == ':';
        if (!is_digit(header[i]) || !boundary) {
            ++i;
            continue;
        }
        std::size_t j = i;
        std::size_t n = 0;
        while (j < header.size() && is_digit(header[j]) && j - i < 6) n = n * 10 + static_cast<std::size_t>(header[j++] - '0');
        const bool item = j < header.size() && header[j] == '.' && (j + 1 == header.size() || is_space(header[j + 1]));
        if (item) {
            if (n == expected) {
                ++expected;
            } else if (n == 1 && expected > 1) {
                break;  // numbering restarted: the solving steps begin
            }
        }
        i = j;
    }
    return expected - 1;
}

}  // namespace adasolve
