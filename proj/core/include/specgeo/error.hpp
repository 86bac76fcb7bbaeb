#pragma once

#include <stdexcept>
#include <string>

namespace specgeo {

enum class ErrorCode {
    input_size,      // input too short / wrong cardinality
    data,            // malformed or non-finite input values
    parameter,       // out-of-range argument
    domain,          // argument outside a formula's domain
    geometry,        // degenerate geometric configuration
    topology,        // mesh connectivity violates required topology
    precondition,    // caller violated a documented precondition
    stratification,  // not enough patients/classes to stratify
    training,        // degenerate training data
    kind,            // operation applied to the wrong model kind
    label,           // unknown class label
    ingest,          // manifest row rejected
    schema,          // file does not match the expected schema
    io,              // file system failure
    internal,        // invariant broken inside the library
};

const char* to_string(ErrorCode code);

/// Exception carrying a coarse category so callers can branch on failure kind.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + " error: " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace specgeo
