#pragma once

#include <stdexcept>
#include <string>

namespace affq {

// Error taxonomy mirrors the CLI exit codes:
//   validation_error -> 1, budget_error -> 2, internal_error -> 3.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input: malformed datum, unknown label, mismatched handles, ...
class validation_error : public error {
public:
    explicit validation_error(const std::string& msg) : error(msg) {}
};

// An iteration/enumeration cap was exceeded; never silent truncation.
class budget_error : public error {
public:
    explicit budget_error(const std::string& msg) : error(msg) {}
};

// An internal invariant failed.  Always a bug report, never swallowed.
class internal_error : public error {
public:
    explicit internal_error(const std::string& msg) : error(msg) {}
};

} // namespace affq
