#pragma once

#include <stdexcept>
#include <string>

namespace hier {

enum class ErrorKind {
    Syntax,
    Validation,
    EmptyGraph,
    DisconnectedInput,
    Infeasible,
    TooLargeForExact,
    InvalidEpsilon,
    UnknownVertex,
    UnknownKind,
    DominationViolation,
    NegativeLeafWeight,
    LengthMismatch,
    TooFewSites,
    EmptyPrimarySet,
    TooManyCombinations,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Validation failure located at a field path such as "edges[3][2]".
class ValidationError : public Error {
public:
    ValidationError(std::string path, const std::string& message)
        : Error(ErrorKind::Validation, path.empty() ? message : path + ": " + message),
          path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace hier
