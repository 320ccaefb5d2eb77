#include "fsmodel/error.hpp"

namespace fsmodel {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::UsageError: return "UsageError";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
    case ErrorKind::MissingColumn: return "MissingColumn";
    case ErrorKind::ExtraColumn: return "ExtraColumn";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::VersionMismatch: return "VersionMismatch";
    case ErrorKind::SchemaInvalid: return "SchemaInvalid";
    case ErrorKind::UnknownMetric: return "UnknownMetric";
    case ErrorKind::UnknownFeature: return "UnknownFeature";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::NoFeasibleCandidate: return "NoFeasibleCandidate";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::ZeroVariance: return "ZeroVariance";
    case ErrorKind::DegenerateDof: return "DegenerateDof";
    case ErrorKind::IoError: return "IoError";
    }
    return "Error";
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::RankDeficient:
    case ErrorKind::TooFewSamples:
    case ErrorKind::ZeroVariance:
    case ErrorKind::DegenerateDof:
        return 3;
    case ErrorKind::IoError:
        return 4;
    default:
        return 2;
    }
}

} // namespace fsmodel
