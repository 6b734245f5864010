#include "adasolve/dataset.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "adasolve/errors.hpp"
#include "adasolve/extraction.hpp"

namespace adasolve {

namespace {

DatasetFamily default_family(AnswerKind kind) {
    switch (kind) {
        case AnswerKind::number: return DatasetFamily::math;
        case AnswerKind::option: return DatasetFamily::math_choices;
        case AnswerKind::string: return DatasetFamily::symbolic;
    }
    return DatasetFamily::math;
}

Decimal abs(const Decimal& d) { return d.is_negative() ? -d : d; }

}  // namespace

CanonicalAnswer canonical_gold(const std::string& raw, AnswerKind kind) {
    switch (kind) {
        case AnswerKind::number: {
            auto d = canonicalize_number(raw);
            if (!d) throw ValidationError("gold answer '" + raw + "' is not a number");
            return CanonicalAnswer::number(*d);
        }
        case AnswerKind::option: {
            std::string letters;
            for (char c : raw) {
                if (std::isalpha(static_cast<unsigned char>(c))) letters.push_back(c);
            }
            if (letters.size() != 1) throw ValidationError("gold answer '" + raw + "' is not a single option letter");
            return CanonicalAnswer::option(letters[0]);
        }
        case AnswerKind::string: {
            auto a = CanonicalAnswer::text(raw);
            if (a.as_text().empty()) throw ValidationError("gold answer is empty");
            return a;
        }
    }
    throw ValidationError("unknown answer kind");
}

std::vector<Problem> load_dataset(const std::filesystem::path& path, std::optional<DatasetFamily> family_override) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open dataset " + path.string());
    std::vector<Problem> problems;
    std::set<std::string> ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Problem p;
        try {
            const auto j = nlohmann::json::parse(line);
            p.id = j.at("id").is_string() ? j.at("id").get<std::string>() : j.at("id").dump();
            p.question = j.at("question").get<std::string>();
            p.answer_kind = parse_answer_kind(j.at("kind").get<std::string>());
            const auto& answer = j.at("answer");
            const std::string raw = answer.is_string() ? answer.get<std::string>() : answer.dump();
            p.gold = canonical_gold(raw, p.answer_kind);
            if (j.contains("choices") && !j.at("choices").is_null()) {
                std::vector<Choice> choices;
                for (const auto& [letter, text] : j.at("choices").items()) {
                    if (letter.size() != 1) throw ValidationError("choice key '" + letter + "' is not one letter");
                    choices.push_back({static_cast<char>(std::tolower(static_cast<unsigned char>(letter[0]))),
                                       text.get<std::string>()});
                }
                p.choices = std::move(choices);
            }
            if (j.contains("n_steps") && !j.at("n_steps").is_null()) p.expected_steps = j.at("n_steps").get<int>();
            p.family = family_override  ? *family_override
                       : j.contains("family") ? parse_dataset_family(j.at("family").get<std::string>())
                                              : default_family(p.answer_kind);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("dataset record: ") + e.what(), line_no);
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), line_no);
        }
        if (auto violation = validate_problem(p)) throw ParseError(*violation, line_no);
        if (!ids.insert(p.id).second) throw ParseError("duplicate problem id '" + p.id + "'", line_no);
        problems.push_back(std::move(p));
    }
    return problems;
}

bool grade(const CanonicalAnswer& gold, const CanonicalAnswer& answer) {
    if (gold.is_unparseable() || answer.is_unparseable()) return false;
    if (gold.is_number() && answer.is_number()) {
        const auto& g = gold.as_number();
        const auto& a = answer.as_number();
        if (g == a) return true;
        // |a - g| <= 1e-6 * |g|
        return abs(a - g) * Decimal(1000000) <= abs(g);
    }
    return agrees(gold, answer);
}

}  // namespace adasolve
