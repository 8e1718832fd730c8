#include "ragbench/error.hpp"
#include "ragbench/generation/backend.hpp"
#include "ragbench/http.hpp"

#include <cstdlib>

namespace ragbench::generation {

HttpChatConfig HttpChatConfig::from_json(const std::string& id, const nlohmann::json& j) {
    try {
        HttpChatConfig c;
        c.id = id;
        c.endpoint = j.at("endpoint").get<std::string>();
        c.model = j.at("model").get<std::string>();
        c.auth_env = j.value("auth_env", std::string{});
        c.max_in_flight = j.value("max_in_flight", std::size_t{4});
        c.timeout = std::chrono::seconds(j.value("timeout_s", 120));
        c.retry.max_retries = j.value("max_retries", 3);
        if (j.contains("audit_log")) c.audit_log = j.at("audit_log").get<std::string>();
        if (j.contains("api_key") || j.contains("token")) {
            throw UserError("backend " + id + ": secrets belong in the environment, not the config (use auth_env)");
        }
        if (c.max_in_flight == 0) throw UserError("backend " + id + ": max_in_flight must be >= 1");
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw UserError("backend " + id + ": " + e.what());
    }
}

HttpChatBackend::HttpChatBackend(HttpChatConfig config) : config_(std::move(config)) {
    HttpEndpoint::parse(config_.endpoint);
    if (!config_.auth_env.empty()) {
        const char* v = std::getenv(config_.auth_env.c_str());
        if (!v || !*v) throw UserError("backend " + config_.id + ": environment variable " + config_.auth_env + " is not set");
        token_ = v;
    }
    if (config_.audit_log) {
        audit_out_.open(*config_.audit_log, std::ios::app | std::ios::binary);
        if (!audit_out_) throw UserError("cannot open audit log " + config_.audit_log->string());
    }
}

nlohmann::ordered_json HttpChatBackend::request_body(const std::string& model, const RenderedPrompt& prompt,
                                                     const GenerationParams& params) {
    nlohmann::ordered_json messages = nlohmann::ordered_json::array();
    for (const auto& m : prompt.messages()) messages.push_back({{"role", m.role}, {"content", m.content}});
    nlohmann::ordered_json body;
    body["model"] = model;
    body["messages"] = std::move(messages);
    body["temperature"] = params.temperature;
    body["max_tokens"] = params.max_tokens;
    return body;
}

void HttpChatBackend::audit(const std::string& request, const std::string& response, int attempt) {
    if (!audit_out_.is_open()) return;
    nlohmann::ordered_json line;
    line["backend"] = config_.id;
    line["attempt"] = attempt;
    line["request"] = nlohmann::json::parse(request, nullptr, false);
    line["response"] = response;
    std::lock_guard lock(audit_mutex_);
    audit_out_ << line.dump() << '\n';
    audit_out_.flush();
}

std::string HttpChatBackend::generate(const RenderedPrompt& prompt, const GenerationParams& params,
                                      const ItemContext&) {
    const std::string request = request_body(config_.model, prompt, params).dump();

    HttpHeaders headers;
    if (!token_.empty()) headers.emplace_back("Authorization", "Bearer " + token_);
    const auto endpoint = HttpEndpoint::parse(config_.endpoint);

    int attempt = 0;
    return call_with_retries(config_.retry, [&]() -> std::string {
        ++attempt;
        std::string response;
        try {
            response = post_json(endpoint, request, headers, config_.timeout);
        } catch (const RetriableError& e) {
            audit(request, std::string("error: ") + e.what(), attempt);
            throw;
        }
        audit(request, response, attempt);
        const auto j = nlohmann::json::parse(response, nullptr, false);
        if (j.is_discarded()) throw RetriableError("chat backend returned non-JSON body", 200, response.substr(0, 200));
        try {
            const auto& content = j.at("choices").at(0).at("message").at("content");
            if (content.is_null()) return {};
            return content.get<std::string>();
        } catch (const nlohmann::json::exception&) {
            throw BackendError("chat response has no choices[0].message.content", 200);
        }
    });
}

} // namespace ragbench::generation
