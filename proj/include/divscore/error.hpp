#pragma once

#include <stdexcept>
#include <string>

namespace divscore {

// Base of every error the library raises. The CLI maps IoError to exit code 2
// and everything else to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input violates a documented precondition or schema.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Filesystem failure: missing file, unreadable, unwritable.
class IoError : public Error {
public:
    using Error::Error;
};

// Numerical routine failed (non-convergence, indefinite input beyond tolerance).
class NumericError : public Error {
public:
    using Error::Error;
};

enum class ParseErrc {
    bad_magic,
    bad_version,
    truncated,
    dim_overflow,
    size_mismatch,
    non_finite,
    empty,
};

const char* to_string(ParseErrc code) noexcept;

// Malformed bytes in one of the binary formats (IDX, DIVT).
class ParseError : public ValidationError {
public:
    ParseError(ParseErrc code, const std::string& detail)
        : ValidationError(std::string(to_string(code)) + ": " + detail), code_(code) {}

    ParseErrc code() const noexcept { return code_; }

private:
    ParseErrc code_;
};

inline const char* to_string(ParseErrc code) noexcept {
    switch (code) {
    case ParseErrc::bad_magic: return "bad magic";
    case ParseErrc::bad_version: return "bad version";
    case ParseErrc::truncated: return "truncated payload";
    case ParseErrc::dim_overflow: return "dimension overflow";
    case ParseErrc::size_mismatch: return "size mismatch";
    case ParseErrc::non_finite: return "non-finite value";
    case ParseErrc::empty: return "empty tensor";
    }
    return "parse error";
}

} // namespace divscore
