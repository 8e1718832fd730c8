#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

namespace ragbench {

struct HttpEndpoint {
    std::string base; // scheme://host[:port]
    std::string path; // begins with '/'

    /// Splits "http://host:8080/v1/chat" into base and path. Throws UserError.
    static HttpEndpoint parse(const std::string& url);
};

using HttpHeaders = std::vector<std::pair<std::string, std::string>>;

/// POSTs a JSON body and returns the response body for 2xx responses.
/// Transport failures, 408, 429 and 5xx throw RetriableError; any other
/// status throws BackendError.
std::string post_json(const HttpEndpoint& endpoint, const std::string& body, const HttpHeaders& headers,
                      std::chrono::seconds timeout);

} // namespace ragbench
