#pragma once

#include <cstdint>
#include <string>

namespace pvkit {

struct SessionOptions {
    bool json = false;
    bool trace = false;
    std::uint64_t seed = 2026;
    int degree_cap = 24;
};

struct RunResult {
    int exit_code = 0;       // 0 ok, 1 usage, 2 domain
    std::string output;      // stdout payload (text or JSON)
    std::string diagnostics; // stderr payload on failure
};

// Parse and execute a DSL program (one command per line).
RunResult run_program(const std::string& text, const SessionOptions& opt = {});

} // namespace pvkit
