#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <set>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "adasolve/backend.hpp"

namespace adasolve {

struct HttpResponse {
    int status = 0;
    std::string body;
};

/// Minimal POST transport so the client can run against a stub.
class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    /// Throws BackendError(transport) on connection failure or timeout.
    virtual HttpResponse post(const std::string& path, const std::string& body,
                              const std::map<std::string, std::string>& headers) = 0;
};

struct HttpBackendConfig {
    std::string base_url = "https://api.openai.com/v1";
    std::string api_key_env = "OPENAI_API_KEY";
    /// Empty means any model id is accepted.
    std::set<std::string> models;
    /// When false, n>1 requests become n sequential n=1 calls.
    bool native_n = true;
    int max_in_flight = 4;
    std::chrono::milliseconds min_interval{0};
    std::chrono::seconds timeout{60};
    std::optional<int> max_tokens;

    static HttpBackendConfig from_json(const nlohmann::json& j);
};

/// cpp-httplib transport for base_url (scheme://host[:port][/prefix]).
std::unique_ptr<HttpTransport> make_httplib_transport(const std::string& base_url, std::chrono::seconds timeout);

/// Path component of base_url, e.g. "/v1" for https://api.openai.com/v1.
std::string base_path(const std::string& base_url);

/// OpenAI-compatible chat-completions client.
class HttpBackend final : public Backend {
public:
    HttpBackend(HttpBackendConfig config, std::shared_ptr<HttpTransport> transport);
    explicit HttpBackend(HttpBackendConfig config);

    GenerationResult generate(const GenerationRequest& request) override;

    /// Request body for one call; exposed for wire-format tests.
    [[nodiscard]] std::string request_body(const GenerationRequest& request, int n) const;

    /// Parses a chat-completions reply carrying `n` choices.
    static GenerationResult parse_response(const std::string& body, int n);

private:
    GenerationResult call(const GenerationRequest& request, int n);
    void pace();

    HttpBackendConfig config_;
    std::shared_ptr<HttpTransport> transport_;
    std::counting_semaphore<1024> in_flight_;
    std::mutex pace_mutex_;
    std::chrono::steady_clock::time_point last_start_{};
};

}  // namespace adasolve
