#pragma once

#include <stdexcept>
#include <string>

namespace confine {

/// Invalid argument or input data that fails its documented precondition.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input too large for an exact enumeration method.
class SizeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A seeded generator exhausted its retries or failed to converge.
class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File read or write failure.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace confine
