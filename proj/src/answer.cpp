#include "adasolve/answer.hpp"

#include <algorithm>
#include <cctype>

#include "adasolve/errors.hpp"

namespace adasolve {

std::string_view to_string(AnswerKind kind) {
    switch (kind) {
        case AnswerKind::number: return "number";
        case AnswerKind::option: return "option";
        case AnswerKind::string: return "string";
    }
    return "?";
}

AnswerKind parse_answer_kind(std::string_view text) {
    if (text == "number") return AnswerKind::number;
    if (text == "option") return AnswerKind::option;
    if (text == "string") return AnswerKind::string;
    throw ValidationError("unknown answer kind '" + std::string(text) + "'");
}

CanonicalAnswer CanonicalAnswer::option(char letter) {
    const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(letter)));
    if (lower < 'a' || lower > 'e') {
        throw ValidationError(std::string("option letter must be a-e, got '") + letter + "'");
    }
    return CanonicalAnswer(Option{lower});
}

CanonicalAnswer CanonicalAnswer::text(std::string_view value) { return CanonicalAnswer(Text{normalize_text_answer(value)}); }

std::string CanonicalAnswer::render() const {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Number>) {
                return v.value.to_string();
            } else if constexpr (std::is_same_v<T, Option>) {
                return std::string("(") + v.letter + ")";
            } else if constexpr (std::is_same_v<T, Text>) {
                return v.value;
            } else {
                return "<unparseable#" + std::to_string(v.ordinal) + ">";
            }
        },
        value_);
}

bool agrees(const CanonicalAnswer& a, const CanonicalAnswer& b) {
    if (a.is_unparseable() || b.is_unparseable()) return false;
    return identical(a, b);
}

bool identical(const CanonicalAnswer& a, const CanonicalAnswer& b) {
    if (a.value_.index() != b.value_.index()) return false;
    return std::visit(
        [&](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            const auto& w = std::get<T>(b.value_);
            if constexpr (std::is_same_v<T, CanonicalAnswer::Number>) return v.value == w.value;
            else if constexpr (std::is_same_v<T, CanonicalAnswer::Option>) return v.letter == w.letter;
            else if constexpr (std::is_same_v<T, CanonicalAnswer::Text>) return v.value == w.value;
            else return v.ordinal == w.ordinal;
        },
        a.value_);
}

std::string normalize_text_answer(std::string_view raw) {
    static constexpr std::string_view kCurlyQuotes[] = {"\u201c", "\u201d", "\u2018", "\u2019"};
    auto is_trim = [](unsigned char c) {
        return std::isspace(c) || c == '"' || c == '\'' || c == '.' || c == ',' || c == '!' || c == '?' ||
               c == ';' || c == ':';
    };
    bool changed = true;
    while (changed && !raw.empty()) {
        changed = false;
        if (is_trim(static_cast<unsigned char>(raw.front()))) {
            raw.remove_prefix(1);
            changed = true;
        } else if (is_trim(static_cast<unsigned char>(raw.back()))) {
            raw.remove_suffix(1);
            changed = true;
        }
        for (auto q : kCurlyQuotes) {
            if (raw.starts_with(q)) {
                raw.remove_prefix(q.size());
                changed = true;
            }
            if (raw.ends_with(q)) {
                raw.remove_suffix(q.size());
                changed = true;
            }
        }
    }
    std::string out(raw);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

}  // namespace adasolve
