#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "adasolve/backend.hpp"

namespace adasolve {

/// One fixture line: {model, problem_id, round, sample, text, prompt_tokens,
/// completion_tokens, kind?}. kind is "solve" (default) or "fallback".
struct FixtureEntry {
    std::string model;
    std::string problem_id;
    std::size_t round = 0;
    std::size_t sample = 0;
    RequestPurpose purpose = RequestPurpose::solve;
    Completion completion;
};

/// Parses a JSONL fixture file; errors carry the offending line.
std::vector<FixtureEntry> read_fixtures(const std::filesystem::path& path);

/// Replays completions keyed by (model, problem, round, sample, purpose).
/// Never fabricates text: an absent key is a missing_fixture error.
class ScriptedBackend final : public Backend {
public:
    explicit ScriptedBackend(const std::vector<FixtureEntry>& entries);

    static ScriptedBackend load(const std::filesystem::path& path);

    GenerationResult generate(const GenerationRequest& request) override;

    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] std::size_t call_count() const { return calls_.load(); }

private:
    using Key = std::tuple<std::string, std::string, std::size_t, std::size_t, RequestPurpose>;
    static std::string describe(const Key& key);

    std::map<Key, Completion> entries_;
    std::atomic<std::size_t> calls_{0};
};

}  // namespace adasolve
