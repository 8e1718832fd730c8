#pragma once

#include <stdexcept>
#include <string>

namespace ragbench {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input or configuration supplied by the operator. The CLI maps it to exit code 2.
class UserError : public Error {
public:
    using Error::Error;
};

/// A remote dependency (chat backend, embedding provider) failed in a way
/// that may succeed on a later attempt.
class RetriableError : public Error {
public:
    RetriableError(const std::string& what, int status = 0, std::string diagnostics = {})
        : Error(what), status_(status), diagnostics_(std::move(diagnostics)) {}

    /// HTTP status, or 0 for transport failures.
    int status() const noexcept { return status_; }
    const std::string& diagnostics() const noexcept { return diagnostics_; }

private:
    int status_;
    std::string diagnostics_;
};

/// A remote dependency failed permanently (non-retriable status or retries exhausted).
class BackendError : public Error {
public:
    BackendError(const std::string& what, int status = 0) : Error(what), status_(status) {}
    int status() const noexcept { return status_; }

private:
    int status_;
};

} // namespace ragbench
