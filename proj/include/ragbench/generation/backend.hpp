#pragma once

#include "ragbench/generation/prompt_template.hpp"
#include "ragbench/retry.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ragbench::generation {

struct GenerationParams {
    double temperature = 0.0;
    int max_tokens = 1024;
    std::size_t context_token_budget = 16384;

    /// Throws UserError on temperature < 0 or non-positive limits.
    void validate() const;
};

/// What a mock needs to know about the item being answered. HTTP backends
/// ignore it.
struct ItemContext {
    std::string answer;
    std::vector<std::string> valid_letters;
    std::vector<std::string> gold_snippet_ids;
    std::vector<std::string> included_ids; // context presentation order
};

class Backend {
public:
    virtual ~Backend() = default;
    virtual const std::string& id() const noexcept = 0;
    /// Upper bound on concurrent generate() calls.
    virtual std::size_t max_in_flight() const noexcept = 0;
    /// Returns the raw completion text. Throws BackendError once retries are spent.
    virtual std::string generate(const RenderedPrompt& prompt, const GenerationParams& params,
                                 const ItemContext& item) = 0;
};

/// The JSON completion every mock emits.
std::string mock_completion(std::string_view rationale, std::string_view letter);

/// Always answers `letter`.
class FixedMockBackend final : public Backend {
public:
    explicit FixedMockBackend(std::string letter);
    const std::string& id() const noexcept override { return id_; }
    std::size_t max_in_flight() const noexcept override { return 64; }
    std::string generate(const RenderedPrompt&, const GenerationParams&, const ItemContext&) override;

private:
    std::string letter_;
    std::string id_;
};

/// Correct iff a gold snippet is within the first `window` context positions
/// (all of them when window is unset). Otherwise answers the first valid
/// letter that is not the gold answer.
class PositionalMockBackend : public Backend {
public:
    explicit PositionalMockBackend(std::optional<std::size_t> window);
    const std::string& id() const noexcept override { return id_; }
    std::size_t max_in_flight() const noexcept override { return 64; }
    std::string generate(const RenderedPrompt&, const GenerationParams&, const ItemContext& item) override;

private:
    std::optional<std::size_t> window_;
    std::string id_;
};

/// Correct iff any gold snippet was included in the context.
class OracleMockBackend final : public PositionalMockBackend {
public:
    OracleMockBackend() : PositionalMockBackend(std::nullopt) {}
};

struct HttpChatConfig {
    std::string id;
    std::string endpoint; // full URL of the chat-completions route
    std::string model;
    std::string auth_env; // name of the env var holding the bearer token; empty = no auth
    std::size_t max_in_flight = 4;
    std::chrono::seconds timeout{120};
    RetryPolicy retry;
    std::optional<std::filesystem::path> audit_log;

    /// {"kind": "http_chat", "endpoint", "model", "auth_env"?, "max_in_flight"?,
    ///  "timeout_s"?, "max_retries"?, "audit_log"?}
    static HttpChatConfig from_json(const std::string& id, const nlohmann::json& j);
};

/// POSTs {model, messages, temperature, max_tokens} and returns
/// choices[0].message.content.
class HttpChatBackend final : public Backend {
public:
    /// Throws UserError if the auth env var is named but unset.
    explicit HttpChatBackend(HttpChatConfig config);
    const std::string& id() const noexcept override { return config_.id; }
    std::size_t max_in_flight() const noexcept override { return config_.max_in_flight; }
    std::string generate(const RenderedPrompt& prompt, const GenerationParams& params, const ItemContext&) override;

    static nlohmann::ordered_json request_body(const std::string& model, const RenderedPrompt& prompt,
                                               const GenerationParams& params);

private:
    void audit(const std::string& request, const std::string& response, int attempt);

    HttpChatConfig config_;
    std::string token_;
    std::mutex audit_mutex_;
    std::ofstream audit_out_;
};

/// Backend ids: "oracle_mock", "positional_mock:<w>", "fixed_mock:<letter>",
/// or a key of `configured` (an object of http_chat configs).
std::unique_ptr<Backend> make_backend(std::string_view id, const nlohmann::json& configured = nlohmann::json::object());

} // namespace ragbench::generation
