#include "ragbench/http.hpp"

#include "ragbench/error.hpp"

#include <httplib.h>

namespace ragbench {

HttpEndpoint HttpEndpoint::parse(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw UserError("endpoint URL lacks a scheme: " + url);
    const auto scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") throw UserError("unsupported URL scheme: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::string post_json(const HttpEndpoint& endpoint, const std::string& body, const HttpHeaders& headers,
                      std::chrono::seconds timeout) {
    httplib::Client client(endpoint.base);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);

    httplib::Headers hdrs;
    for (const auto& [k, v] : headers) hdrs.emplace(k, v);

    auto res = client.Post(endpoint.path, hdrs, body, "application/json");
    if (!res) {
        throw RetriableError("request to " + endpoint.base + endpoint.path + " failed: " + httplib::to_string(res.error()),
                             0, httplib::to_string(res.error()));
    }
    const int status = res->status;
    if (status >= 200 && status < 300) return res->body;
    const std::string msg = "HTTP " + std::to_string(status) + " from " + endpoint.base + endpoint.path;
    if (status == 408 || status == 429 || status >= 500) throw RetriableError(msg, status, res->body);
    throw BackendError(msg + ": " + res->body.substr(0, 512), status);
}

} // namespace ragbench
