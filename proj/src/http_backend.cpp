#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "adasolve/http_backend.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace adasolve {

namespace {

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;    // "" or "/prefix"
};

SplitUrl split_url(const std::string& url) {
    const auto scheme = url.find("://");
    const auto host_start = scheme == std::string::npos ? 0 : scheme + 3;
    const auto slash = url.find('/', host_start);
    if (slash == std::string::npos) return {url, ""};
    std::string path = url.substr(slash);
    while (!path.empty() && path.back() == '/') path.pop_back();
    return {url.substr(0, slash), path};
}

class HttplibTransport final : public HttpTransport {
public:
    HttplibTransport(const std::string& base_url, std::chrono::seconds timeout)
        : client_(split_url(base_url).origin) {
        client_.set_connection_timeout(timeout);
        client_.set_read_timeout(timeout);
        client_.set_write_timeout(timeout);
    }

    HttpResponse post(const std::string& path, const std::string& body,
                      const std::map<std::string, std::string>& headers) override {
        httplib::Headers h(headers.begin(), headers.end());
        auto res = client_.Post(path, h, body, "application/json");
        if (!res) {
            throw BackendError(BackendErrorKind::transport, true, "POST " + path + ": " + httplib::to_string(res.error()));
        }
        return HttpResponse{res->status, res->body};
    }

private:
    httplib::Client client_;
};

bool retryable_status(int status) { return status == 408 || status == 409 || status == 429 || status >= 500; }

}  // namespace

HttpBackendConfig HttpBackendConfig::from_json(const nlohmann::json& j) {
    HttpBackendConfig c;
    c.base_url = j.value("base_url", c.base_url);
    c.api_key_env = j.value("api_key_env", c.api_key_env);
    if (j.contains("models")) {
        for (const auto& m : j.at("models")) c.models.insert(m.get<std::string>());
    }
    c.native_n = j.value("native_n", c.native_n);
    c.max_in_flight = j.value("max_in_flight", c.max_in_flight);
    c.min_interval = std::chrono::milliseconds(j.value("min_interval_ms", 0));
    c.timeout = std::chrono::seconds(j.value("timeout_seconds", 60));
    if (j.contains("max_tokens")) c.max_tokens = j.at("max_tokens").get<int>();
    if (c.max_in_flight < 1 || c.max_in_flight > 1024) throw ValidationError("max_in_flight must be in [1, 1024]");
    return c;
}

std::unique_ptr<HttpTransport> make_httplib_transport(const std::string& base_url, std::chrono::seconds timeout) {
    return std::make_unique<HttplibTransport>(base_url, timeout);
}

std::string base_path(const std::string& base_url) { return split_url(base_url).path; }

HttpBackend::HttpBackend(HttpBackendConfig config, std::shared_ptr<HttpTransport> transport)
    : config_(std::move(config)), transport_(std::move(transport)), in_flight_(config_.max_in_flight) {}

HttpBackend::HttpBackend(HttpBackendConfig config)
    : HttpBackend(config, std::shared_ptr<HttpTransport>(make_httplib_transport(config.base_url, config.timeout))) {}

std::string HttpBackend::request_body(const GenerationRequest& request, int n) const {
    nlohmann::json body;
    body["model"] = request.model_id;
    body["messages"] = nlohmann::json::array();
    for (const auto& m : request.messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});
    body["temperature"] = request.temperature;
    body["n"] = n;
    if (auto max_tokens = request.max_tokens ? request.max_tokens : config_.max_tokens) body["max_tokens"] = *max_tokens;
    return body.dump();
}

GenerationResult HttpBackend::parse_response(const std::string& body, int n) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
        throw BackendError(BackendErrorKind::malformed_response, true, std::string("invalid JSON: ") + e.what());
    }
    if (!j.contains("usage") || !j["usage"].is_object() || !j["usage"].contains("prompt_tokens") ||
        !j["usage"].contains("completion_tokens")) {
        throw BackendError(BackendErrorKind::accounting, false, "response carries no usage block");
    }
    if (!j.contains("choices") || !j["choices"].is_array() || j["choices"].size() != static_cast<std::size_t>(n)) {
        throw BackendError(BackendErrorKind::malformed_response, true,
                           "expected " + std::to_string(n) + " choices");
    }
    std::vector<std::pair<long, std::string>> indexed;
    for (std::size_t i = 0; i < j["choices"].size(); ++i) {
        const auto& c = j["choices"][i];
        const long index = c.value("index", static_cast<long>(i));
        std::string text;
        if (c.contains("message") && c["message"].contains("content") && c["message"]["content"].is_string()) {
            text = c["message"]["content"].get<std::string>();
        } else if (!(c.contains("message") && c["message"].contains("content") && c["message"]["content"].is_null())) {
            throw BackendError(BackendErrorKind::malformed_response, true, "choice without message.content");
        }
        indexed.emplace_back(index, std::move(text));
    }
    std::stable_sort(indexed.begin(), indexed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    const long prompt = j["usage"]["prompt_tokens"].get<long>();
    const long completion = j["usage"]["completion_tokens"].get<long>();
    if (prompt < 0 || completion < 0) throw BackendError(BackendErrorKind::accounting, false, "negative usage");

    // The prompt is billed once; completion tokens are spread over choices,
    // remainder to the earliest ones.
    GenerationResult out;
    for (std::size_t i = 0; i < indexed.size(); ++i) {
        const long share = completion / n + (static_cast<long>(i) < completion % n ? 1 : 0);
        out.push_back(Completion{std::move(indexed[i].second), i == 0 ? prompt : 0, share});
    }
    return out;
}

void HttpBackend::pace() {
    if (config_.min_interval.count() <= 0) return;
    std::unique_lock lock(pace_mutex_);
    const auto now = std::chrono::steady_clock::now();
    const auto ready = last_start_ + config_.min_interval;
    if (now < ready) std::this_thread::sleep_for(ready - now);
    last_start_ = std::chrono::steady_clock::now();
}

GenerationResult HttpBackend::call(const GenerationRequest& request, int n) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (!key || !*key) {
        throw BackendError(BackendErrorKind::credential, false, "environment variable " + config_.api_key_env + " is not set");
    }
    std::map<std::string, std::string> headers{{"Authorization", std::string("Bearer ") + key}};
    const auto body = request_body(request, n);

    in_flight_.acquire();
    HttpResponse response;
    try {
        pace();
        response = transport_->post(base_path(config_.base_url) + "/chat/completions", body, headers);
    } catch (...) {
        in_flight_.release();
        throw;
    }
    in_flight_.release();

    if (response.status < 200 || response.status >= 300) {
        throw BackendError(BackendErrorKind::http_status, retryable_status(response.status),
                           "status " + std::to_string(response.status) + ": " + response.body.substr(0, 200));
    }
    return parse_response(response.body, n);
}

GenerationResult HttpBackend::generate(const GenerationRequest& request) {
    if (!config_.models.empty() && !config_.models.contains(request.model_id)) {
        throw BackendError(BackendErrorKind::unknown_model, false, request.model_id);
    }
    if (request.n < 1) throw BackendError(BackendErrorKind::malformed_response, false, "n must be >= 1");
    if (config_.native_n || request.n == 1) return call(request, request.n);

    GenerationResult out;
    for (int i = 0; i < request.n; ++i) {
        auto one = call(request, 1);
        out.push_back(std::move(one.front()));
    }
    return out;
}

}  // namespace adasolve
