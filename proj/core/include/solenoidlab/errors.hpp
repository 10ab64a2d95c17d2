// Error taxonomy shared by the library and the CLI exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace slab {

class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Unreadable or syntactically invalid input (CLI exit code 2).
class malformed_input_error : public error {
public:
    using error::error;
};

// A documented precondition of an operation does not hold (exit code 3).
class precondition_error : public error {
public:
    using error::error;
};

// An exact certificate check failed; the constructed object is rejected
// rather than silently accepted (exit code 4).
class certificate_error : public error {
public:
    using error::error;
};

// The construction itself could not be completed (pin collisions,
// degenerate fixed sets, failed approximation retries) (exit code 4).
class construction_error : public error {
public:
    using error::error;
};

// A configured resource cap (piece count, partition level, prefix
// materialization) would be exceeded (exit code 5).
class resource_error : public error {
public:
    using error::error;
};

enum exit_code : int {
    exit_ok = 0,
    exit_parse = 2,
    exit_precondition = 3,
    exit_certificate = 4,
    exit_resource = 5,
};

} // namespace slab
