#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adasolve/errors.hpp"
#include "adasolve/prompts.hpp"

namespace adasolve {

enum class RequestPurpose { solve, fallback };

std::string_view to_string(RequestPurpose purpose);

/// Where a request sits in a solve: which problem, round and first sample
/// index. Live backends ignore it; the scripted backend keys on it.
struct RequestContext {
    std::string problem_id;
    std::size_t round = 0;
    std::size_t sample = 0;
    RequestPurpose purpose = RequestPurpose::solve;
};

struct GenerationRequest {
    std::string model_id;
    MessageSequence messages;
    double temperature = 0.0;
    int n = 1;
    std::optional<int> max_tokens;
    RequestContext context;
};

struct Completion {
    std::string text;
    long prompt_tokens = 0;
    long completion_tokens = 0;
};

/// Exactly `n` completions ordered by sample index.
using GenerationResult = std::vector<Completion>;

enum class BackendErrorKind { unknown_model, missing_fixture, transport, http_status, malformed_response, accounting, credential };

std::string_view to_string(BackendErrorKind kind);

class BackendError : public Error {
public:
    BackendError(BackendErrorKind kind, bool retryable, const std::string& what)
        : Error(std::string(to_string(kind)) + ": " + what), kind_(kind), retryable_(retryable) {}

    [[nodiscard]] BackendErrorKind kind() const { return kind_; }
    [[nodiscard]] bool retryable() const { return retryable_; }

private:
    BackendErrorKind kind_;
    bool retryable_;
};

/// Generation service. Implementations must allow concurrent generate() calls.
class Backend {
public:
    virtual ~Backend() = default;
    virtual GenerationResult generate(const GenerationRequest& request) = 0;
};

}  // namespace adasolve
