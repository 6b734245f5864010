#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adasolve/answer.hpp"
#include "adasolve/errors.hpp"
#include "adasolve/model.hpp"

namespace adasolve {

class RegistryError : public Error {
public:
    using Error::Error;
};

struct Message {
    std::string role;
    std::string content;

    friend bool operator==(const Message&, const Message&) = default;
};

using MessageSequence = std::vector<Message>;

struct Exemplar {
    std::string question;
    std::string completion;
};

/// Prompting method key used by the registry. Covers every MethodId plus
/// "php", which only the baseline loop uses.
std::string_view method_key(MethodId method);
inline constexpr std::string_view kPhpMethod = "php";

struct PromptTemplate {
    std::string method;
    DatasetFamily family;
    std::string body;
    std::string expected_marker;
    std::vector<std::string> exemplar_answers;

    /// Q/A pairs preceding the final "Q: {question}" block.
    [[nodiscard]] std::vector<Exemplar> exemplars() const;
    /// Trailing "A: ..." instruction line after the placeholder.
    [[nodiscard]] std::string instruction_line() const;
};

/// Question text with its answer choices appended the way the family's
/// exemplars show them.
std::string format_question(std::string_view question, DatasetFamily family, std::span<const Choice> choices);

/// Templates loaded from prompts/<method>/<family>.txt, verified against
/// manifest.json checksums. Read-only after load.
class PromptRegistry {
public:
    static PromptRegistry load(const std::filesystem::path& dir);
    /// $ADASOLVE_PROMPT_DIR, else the directory baked in at build time.
    static PromptRegistry load_default();

    [[nodiscard]] const PromptTemplate& get(std::string_view method, DatasetFamily family) const;
    [[nodiscard]] bool contains(std::string_view method, DatasetFamily family) const;
    [[nodiscard]] std::vector<const PromptTemplate*> templates() const;

    /// Whole prompt as a single user message.
    [[nodiscard]] MessageSequence render_prompt(MethodId method, DatasetFamily family, std::string_view question,
                                                std::span<const Choice> choices = {}) const;

    /// First turn (no hints) renders as plain CoT; later turns add
    /// "(Hint: The answer is near to h1, h2, ...)." after the question.
    [[nodiscard]] MessageSequence render_php_prompt(std::string_view question,
                                                    std::span<const CanonicalAnswer> hints, DatasetFamily family,
                                                    std::span<const Choice> choices = {}) const;

private:
    [[nodiscard]] std::string available() const;
    std::map<std::pair<std::string, DatasetFamily>, PromptTemplate> templates_;
};

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

}  // namespace adasolve
