#include "hier/core/error.hpp"

namespace hier {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Syntax: return "SyntaxError";
        case ErrorKind::Validation: return "ValidationError";
        case ErrorKind::EmptyGraph: return "EmptyGraph";
        case ErrorKind::DisconnectedInput: return "DisconnectedInput";
        case ErrorKind::Infeasible: return "Infeasible";
        case ErrorKind::TooLargeForExact: return "TooLargeForExact";
        case ErrorKind::InvalidEpsilon: return "InvalidEpsilon";
        case ErrorKind::UnknownVertex: return "UnknownVertex";
        case ErrorKind::UnknownKind: return "UnknownKind";
        case ErrorKind::DominationViolation: return "DominationViolation";
        case ErrorKind::NegativeLeafWeight: return "NegativeLeafWeight";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::TooFewSites: return "TooFewSites";
        case ErrorKind::EmptyPrimarySet: return "EmptyPrimarySet";
        case ErrorKind::TooManyCombinations: return "TooManyCombinations";
    }
    return "Error";
}

}  // namespace hier
