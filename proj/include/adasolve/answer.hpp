#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

#include "adasolve/decimal.hpp"

namespace adasolve {

enum class AnswerKind { number, option, string };

std::string_view to_string(AnswerKind kind);
AnswerKind parse_answer_kind(std::string_view text);

/// Normalized answer used for voting and grading.
///
/// Number holds an exact decimal, Option a lowercase letter a-e, Text a
/// normalized (lowercased, unquoted) string. Unparseable marks a failed
/// extraction and never agrees with anything, itself included.
class CanonicalAnswer {
public:
    struct Number {
        Decimal value;
    };
    struct Option {
        char letter;
    };
    struct Text {
        std::string value;
    };
    struct Unparseable {
        std::size_t ordinal;
    };

    static CanonicalAnswer number(Decimal value) { return CanonicalAnswer(Number{std::move(value)}); }
    static CanonicalAnswer option(char letter);
    static CanonicalAnswer text(std::string_view value);
    static CanonicalAnswer unparseable(std::size_t ordinal) { return CanonicalAnswer(Unparseable{ordinal}); }

    [[nodiscard]] bool is_number() const { return std::holds_alternative<Number>(value_); }
    [[nodiscard]] bool is_option() const { return std::holds_alternative<Option>(value_); }
    [[nodiscard]] bool is_text() const { return std::holds_alternative<Text>(value_); }
    [[nodiscard]] bool is_unparseable() const { return std::holds_alternative<Unparseable>(value_); }

    [[nodiscard]] const Decimal& as_number() const { return std::get<Number>(value_).value; }
    [[nodiscard]] char as_option() const { return std::get<Option>(value_).letter; }
    [[nodiscard]] const std::string& as_text() const { return std::get<Text>(value_).value; }
    [[nodiscard]] std::size_t ordinal() const { return std::get<Unparseable>(value_).ordinal; }

    /// "32", "(b)", "nk", "<unparseable#2>".
    [[nodiscard]] std::string render() const;

    /// Voting equality. Unparseable values never agree.
    friend bool agrees(const CanonicalAnswer& a, const CanonicalAnswer& b);

    /// Structural identity, including Unparseable ordinals. For serialization tests.
    friend bool identical(const CanonicalAnswer& a, const CanonicalAnswer& b);

private:
    using Storage = std::variant<Number, Option, Text, Unparseable>;
    explicit CanonicalAnswer(Storage value) : value_(std::move(value)) {}

    Storage value_;
};

/// Lowercases, trims, drops surrounding quotes and terminal punctuation.
std::string normalize_text_answer(std::string_view raw);

}  // namespace adasolve
