#pragma once

#include <stdexcept>
#include <string>

namespace kolaseq {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters or out-of-range arguments (maps to CLI exit code 2).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// A requested computation exceeds a configured resource ceiling.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// A census query targets a position that was already passed without retention.
class QueryError : public Error {
public:
    using Error::Error;
};

/// Position guard: the stream must never advance beyond 10^15.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// File-system failures, reported with path context (maps to CLI exit code 3).
class IoError : public Error {
public:
    using Error::Error;
};

/// Base class for checkpoint load failures; each failure mode is distinct.
class CheckpointError : public Error {
public:
    using Error::Error;
};

class CheckpointVersionError : public CheckpointError {
public:
    using CheckpointError::CheckpointError;
};

class CheckpointDigestError : public CheckpointError {
public:
    using CheckpointError::CheckpointError;
};

class CheckpointFormatError : public CheckpointError {
public:
    using CheckpointError::CheckpointError;
};

class CheckpointInvariantError : public CheckpointError {
public:
    using CheckpointError::CheckpointError;
};

} // namespace kolaseq
