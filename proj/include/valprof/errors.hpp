#pragma once

#include <stdexcept>
#include <string>

namespace valprof {

// Invalid user-supplied configuration (bad probabilities, malformed config
// file, wrong dimensions). CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Anything that goes wrong after configuration was accepted (missing files,
// inconsistent data). CLI maps this to exit code 2.
struct RuntimeError : std::runtime_error {
    explicit RuntimeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised by the belief update when an observation has zero probability under
// the generative model for every joint state.
struct DegenerateEvidenceError : RuntimeError {
    explicit DegenerateEvidenceError(const std::string& msg) : RuntimeError(msg) {}
};

}  // namespace valprof
