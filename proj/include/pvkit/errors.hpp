#pragma once

#include <stdexcept>
#include <string>

namespace pvkit {

// Raised when an input is outside the supported mathematical scope
// (e.g. "unsupported constant class", "unsupported extension").
// The CLI maps these to exit code 2.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised on malformed input (parse errors, arity errors). Exit code 1.
struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal consistency failure. A thrown internal_error is a bug signal,
// never a legal answer.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace pvkit
