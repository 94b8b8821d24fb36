#pragma once

#include <stdexcept>
#include <string>

namespace plab {

/// Root of every error this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad parameters, grid sizes, options or configuration values.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Deflection reached the electrode: the remaining gap G - y is not positive.
class GapClosedError : public Error {
public:
    using Error::Error;
};

/// No static instability was found below the expanded voltage ceiling.
class NoPullInError : public Error {
public:
    using Error::Error;
};

/// The requested operating point lies beyond pull-in (no stable equilibrium).
class PastPullInError : public Error {
public:
    using Error::Error;
};

/// A feature that is intentionally not implemented.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed or truncated result file.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Result file written with a schema version this build does not read.
class SchemaVersionError : public FormatError {
public:
    using FormatError::FormatError;
};

}  // namespace plab
