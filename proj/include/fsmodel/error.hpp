#pragma once

#include <stdexcept>
#include <string>

namespace fsmodel {

/// Every failure the toolkit can raise, one kind per contract violation.
enum class ErrorKind {
    // input / validation
    UsageError,
    UnknownLabel,
    NonFiniteValue,
    EmptyDataset,
    MissingColumn,
    ExtraColumn,
    ParseError,
    VersionMismatch,
    SchemaInvalid,
    UnknownMetric,
    UnknownFeature,
    SchemaMismatch,
    NoFeasibleCandidate,
    InvalidConfig,
    // numerical
    RankDeficient,
    TooFewSamples,
    ZeroVariance,
    DegenerateDof,
    // I/O
    IoError,
};

const char* error_kind_name(ErrorKind kind);

/// Process exit code for a given failure: 2 input/validation, 3 numerical, 4 I/O.
int exit_code_for(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const { return kind_; }
    int exit_code() const { return exit_code_for(kind_); }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace fsmodel
