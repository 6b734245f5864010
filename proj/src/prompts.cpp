#include "adasolve/prompts.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#ifndef ADASOLVE_DEFAULT_PROMPT_DIR
#define ADASOLVE_DEFAULT_PROMPT_DIR "prompts"
#endif

namespace adasolve {

namespace {

constexpr std::string_view kPlaceholder = "{question}";

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw RegistryError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::size_t count_occurrences(std::string_view haystack, std::string_view needle) {
    std::size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string_view::npos; pos = haystack.find(needle, pos + 1)) ++n;
    return n;
}

bool needs_choices(DatasetFamily family) {
    return family == DatasetFamily::math_choices || family == DatasetFamily::commonsense;
}

std::string substitute(const std::string& body, std::string_view question) {
    std::string out = body;
    const auto pos = out.find(kPlaceholder);
    out.replace(pos, kPlaceholder.size(), question);
    return out;
}

void check_choices(DatasetFamily family, std::span<const Choice> choices) {
    if (needs_choices(family) && choices.empty()) {
        throw ValidationError("family " + std::string(to_string(family)) + " requires answer choices");
    }
    if (!needs_choices(family) && !choices.empty()) {
        throw ValidationError("family " + std::string(to_string(family)) + " takes no answer choices");
    }
}

}  // namespace

std::string_view method_key(MethodId method) { return to_string(method); }

std::vector<Exemplar> PromptTemplate::exemplars() const {
    std::vector<Exemplar> out;
    std::size_t start = 0;
    while (start < body.size()) {
        auto end = body.find("\n\n", start);
        if (end == std::string::npos) end = body.size();
        const std::string_view block(body.data() + start, end - start);
        if (block.starts_with("Q: ") && block.find(kPlaceholder) == std::string_view::npos) {
            const auto a = block.find("\nA:");
            if (a != std::string_view::npos) {
                std::string completion(block.substr(a + 3));
                if (!completion.empty() && completion.front() == ' ') completion.erase(0, 1);
                out.push_back({std::string(block.substr(3, a - 3)), std::move(completion)});
            }
        }
        start = end + 2;
    }
    return out;
}

std::string PromptTemplate::instruction_line() const {
    const auto pos = body.find(kPlaceholder);
    const auto a = body.find("\nA:", pos);
    if (a == std::string::npos) return {};
    return body.substr(a + 1);
}

std::string format_question(std::string_view question, DatasetFamily family, std::span<const Choice> choices) {
    std::string out(question);
    if (choices.empty()) return out;
    out += family == DatasetFamily::commonsense ? " " : "\n";
    out += "Answer Choices:";
    for (const auto& c : choices) {
        out += " (";
        out += c.letter;
        out += ") ";
        out += c.text;
    }
    return out;
}

PromptRegistry PromptRegistry::load(const std::filesystem::path& dir) {
    const auto manifest_path = dir / "manifest.json";
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(read_file(manifest_path));
    } catch (const nlohmann::json::exception& e) {
        throw RegistryError("bad manifest " + manifest_path.string() + ": " + e.what());
    }

    PromptRegistry registry;
    for (const auto& entry : manifest.at("templates")) {
        PromptTemplate t;
        t.method = entry.at("method").get<std::string>();
        t.family = parse_dataset_family(entry.at("family").get<std::string>());
        t.expected_marker = entry.at("expected_marker").get<std::string>();
        t.exemplar_answers = entry.at("exemplar_answers").get<std::vector<std::string>>();

        const auto file = entry.at("file").get<std::string>();
        std::string bytes = read_file(dir / file);
        const auto digest = sha256_hex(bytes);
        if (digest != entry.at("sha256").get<std::string>()) {
            throw RegistryError("checksum mismatch for " + file + " (got " + digest + ")");
        }
        if (bytes.ends_with('\n')) bytes.pop_back();
        t.body = std::move(bytes);

        if (count_occurrences(t.body, kPlaceholder) != 1) {
            throw RegistryError(file + ": template must contain exactly one " + std::string(kPlaceholder));
        }
        const auto shots = t.exemplars().size();
        if (shots != 0 && shots != 4) {
            throw RegistryError(file + ": few-shot templates carry 4 exemplars, found " + std::to_string(shots));
        }
        if (t.exemplar_answers.size() != shots) {
            throw RegistryError(file + ": manifest lists " + std::to_string(t.exemplar_answers.size()) +
                                " exemplar answers for " + std::to_string(shots) + " exemplars");
        }
        auto key = std::make_pair(t.method, t.family);
        if (!registry.templates_.emplace(std::move(key), std::move(t)).second) {
            throw RegistryError("duplicate template entry for " + file);
        }
    }
    return registry;
}

PromptRegistry PromptRegistry::load_default() {
    if (const char* env = std::getenv("ADASOLVE_PROMPT_DIR"); env && *env) return load(env);
    return load(ADASOLVE_DEFAULT_PROMPT_DIR);
}

bool PromptRegistry::contains(std::string_view method, DatasetFamily family) const {
    return templates_.contains({std::string(method), family});
}

const PromptTemplate& PromptRegistry::get(std::string_view method, DatasetFamily family) const {
    const auto it = templates_.find({std::string(method), family});
    if (it == templates_.end()) {
        throw RegistryError("no prompt for " + std::string(method) + "/" + std::string(to_string(family)) +
                            "; available: " + available());
    }
    return it->second;
}

std::vector<const PromptTemplate*> PromptRegistry::templates() const {
    std::vector<const PromptTemplate*> out;
    out.reserve(templates_.size());
    for (const auto& [key, t] : templates_) out.push_back(&t);
    return out;
}

std::string PromptRegistry::available() const {
    std::string out;
    for (const auto& [key, t] : templates_) {
        if (!out.empty()) out += ", ";
        out += key.first + "/" + std::string(to_string(key.second));
    }
    return out;
}

MessageSequence PromptRegistry::render_prompt(MethodId method, DatasetFamily family, std::string_view question,
                                              std::span<const Choice> choices) const {
    check_choices(family, choices);
    const auto& t = get(method_key(method), family);
    return {Message{"user", substitute(t.body, format_question(question, family, choices))}};
}

MessageSequence PromptRegistry::render_php_prompt(std::string_view question, std::span<const CanonicalAnswer> hints,
                                                  DatasetFamily family, std::span<const Choice> choices) const {
    if (hints.empty()) return render_prompt(MethodId::cot, family, question, choices);
    check_choices(family, choices);
    std::string hinted(question);
    hinted += " (Hint: The answer is near to ";
    for (std::size_t i = 0; i < hints.size(); ++i) {
        if (i) hinted += ", ";
        hinted += hints[i].render();
    }
    hinted += ").";
    const auto& t = get(kPhpMethod, family);
    return {Message{"user", substitute(t.body, format_question(hinted, family, choices))}};
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("sha256 failed");
    }
    std::ostringstream out;
    out << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i) out << std::setw(2) << static_cast<int>(digest[i]);
    return out.str();
}

}  // namespace adasolve
