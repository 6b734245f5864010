#include "adasolve/scripted_backend.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace adasolve {

ScriptedBackend::ScriptedBackend(const std::vector<FixtureEntry>& entries) {
    for (const auto& e : entries) {
        if (e.completion.prompt_tokens < 0 || e.completion.completion_tokens < 0) {
            throw ParseError("negative token count for " +
                             describe({e.model, e.problem_id, e.round, e.sample, e.purpose}));
        }
        Key key{e.model, e.problem_id, e.round, e.sample, e.purpose};
        if (!entries_.emplace(key, e.completion).second) throw ParseError("duplicate fixture key " + describe(key));
    }
}

ScriptedBackend ScriptedBackend::load(const std::filesystem::path& path) { return ScriptedBackend(read_fixtures(path)); }

std::vector<FixtureEntry> read_fixtures(const std::filesystem::path& path) {
    using Key = std::tuple<std::string, std::string, std::size_t, std::size_t, RequestPurpose>;
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open fixture file " + path.string());
    std::vector<FixtureEntry> entries;
    std::map<Key, std::size_t> first_line;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        FixtureEntry e;
        try {
            const auto j = nlohmann::json::parse(line);
            e.model = j.at("model").get<std::string>();
            e.problem_id = j.at("problem_id").get<std::string>();
            e.round = j.at("round").get<std::size_t>();
            e.sample = j.at("sample").get<std::size_t>();
            const auto kind = j.value("kind", std::string("solve"));
            if (kind != "solve" && kind != "fallback") throw ParseError("kind must be solve or fallback", line_no);
            e.purpose = kind == "solve" ? RequestPurpose::solve : RequestPurpose::fallback;
            e.completion.text = j.at("text").get<std::string>();
            e.completion.prompt_tokens = j.at("prompt_tokens").get<long>();
            e.completion.completion_tokens = j.at("completion_tokens").get<long>();
        } catch (const nlohmann::json::exception& ex) {
            throw ParseError(std::string("fixture schema violation: ") + ex.what(), line_no);
        }
        if (e.completion.prompt_tokens < 0 || e.completion.completion_tokens < 0) {
            throw ParseError("negative token count", line_no);
        }
        Key key{e.model, e.problem_id, e.round, e.sample, e.purpose};
        if (auto [it, inserted] = first_line.emplace(key, line_no); !inserted) {
            throw ParseError("duplicate fixture key " + e.model + "/" + e.problem_id + " round " + std::to_string(e.round) +
                                 " sample " + std::to_string(e.sample) + " (first seen on line " +
                                 std::to_string(it->second) + ")",
                             line_no);
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

GenerationResult ScriptedBackend::generate(const GenerationRequest& request) {
    calls_.fetch_add(1);
    if (request.n < 1) throw BackendError(BackendErrorKind::malformed_response, false, "n must be >= 1");
    GenerationResult out;
    out.reserve(static_cast<std::size_t>(request.n));
    const auto& ctx = request.context;
    for (int i = 0; i < request.n; ++i) {
        Key key{request.model_id, ctx.problem_id, ctx.round, ctx.sample + static_cast<std::size_t>(i), ctx.purpose};
        const auto it = entries_.find(key);
        if (it == entries_.end()) throw BackendError(BackendErrorKind::missing_fixture, false, describe(key));
        out.push_back(it->second);
    }
    return out;
}

std::string ScriptedBackend::describe(const Key& key) {
    const auto& [model, problem, round, sample, purpose] = key;
    return "(model=" + model + ", problem=" + problem + ", round=" + std::to_string(round) +
           ", sample=" + std::to_string(sample) + ", kind=" + std::string(to_string(purpose)) + ")";
}

}  // namespace adasolve
