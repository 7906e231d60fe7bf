#pragma once

#include <stdexcept>
#include <string>

namespace sparsealign {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input bytes (CSV structure, non-integer scores, bad headers).
struct ParseError : Error {
    using Error::Error;
};

// Structurally valid input that violates a table contract
// (out-of-scale score, duplicate key, missing coverage, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Configuration outside its documented domain (alpha, scale, fraction, ...).
struct ConfigError : Error {
    using Error::Error;
};

} // namespace sparsealign
