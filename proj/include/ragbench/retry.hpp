#pragma once

#include "ragbench/error.hpp"

#include <chrono>
#include <functional>
#include <string>
#include <thread>

namespace ragbench {

/// Exponential backoff: retry i (0-based) waits initial_delay * multiplier^i.
/// The defaults give 1s, 4s, 16s.
struct RetryPolicy {
    int max_retries = 3;
    std::chrono::milliseconds initial_delay{1000};
    double multiplier = 4.0;
    /// Replaceable so tests do not sleep.
    std::function<void(std::chrono::milliseconds)> sleep = [](std::chrono::milliseconds d) {
        std::this_thread::sleep_for(d);
    };

    std::chrono::milliseconds delay_before_retry(int retry) const {
        double ms = static_cast<double>(initial_delay.count());
        for (int i = 0; i < retry; ++i) ms *= multiplier;
        return std::chrono::milliseconds(static_cast<long long>(ms));
    }
};

/// Calls `attempt` until it returns without throwing RetriableError or the
/// retry budget is spent. Exhaustion is reported as BackendError.
template <class F>
auto call_with_retries(const RetryPolicy& policy, F&& attempt) -> decltype(attempt()) {
    for (int retry = 0;; ++retry) {
        try {
            return attempt();
        } catch (const RetriableError& e) {
            if (retry >= policy.max_retries) {
                throw BackendError("giving up after " + std::to_string(retry + 1) + " attempts: " + e.what(),
                                   e.status());
            }
            if (policy.sleep) policy.sleep(policy.delay_before_retry(retry));
        }
    }
}

} // namespace ragbench
