#pragma once

#include <stdexcept>
#include <string>

namespace infhecke {

// Error taxonomy, mirrored by CLI exit codes: usage 1, resource cap 2,
// math precondition 3, internal consistency 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : Error {
    using Error::Error;
};

struct ResourceCapError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

struct ConsistencyError : Error {
    using Error::Error;
};

} // namespace infhecke
