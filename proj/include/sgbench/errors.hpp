#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sgbench {

// Exit-code taxonomy used by the CLI:
//   0 success, 1 contract violation, 2 usage error, 3 I/O or integrity error.

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text; carries the 1-based source line.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, size_t line_number)
        : std::runtime_error("line " + std::to_string(line_number) + ": " + what),
          line(line_number) {}
    size_t line;
};

// Well-formed input that breaks a data invariant (duplicate triple,
// checksum mismatch, split-size mismatch, ...).
struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unknown label against a sealed vocabulary.
struct LookupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GenerationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PipelineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TrainingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition.
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

// A computation was refused because its problem size is pathological.
struct SizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sgbench
