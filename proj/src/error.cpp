#include "langgraph/error.hpp"

namespace langgraph {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::IoFailure: return "IoFailure";
        case ErrorKind::MissingColumn: return "MissingColumn";
        case ErrorKind::MalformedRow: return "MalformedRow";
        case ErrorKind::DuplicateId: return "DuplicateId";
        case ErrorKind::CoordinateOutOfRange: return "CoordinateOutOfRange";
        case ErrorKind::MalformedForms: return "MalformedForms";
        case ErrorKind::NegativeFrequency: return "NegativeFrequency";
        case ErrorKind::SelfColexification: return "SelfColexification";
        case ErrorKind::RatingOutOfScale: return "RatingOutOfScale";
        case ErrorKind::AsymmetricMatrix: return "AsymmetricMatrix";
        case ErrorKind::ValueOutOfRange: return "ValueOutOfRange";
        case ErrorKind::DuplicatePair: return "DuplicatePair";
        case ErrorKind::UnknownSetName: return "UnknownSetName";
        case ErrorKind::EmptyResult: return "EmptyResult";
        case ErrorKind::EmptyPatternList: return "EmptyPatternList";
        case ErrorKind::UnattestedPattern: return "UnattestedPattern";
        case ErrorKind::UnknownLanguageId: return "UnknownLanguageId";
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::EmptyTranscription: return "EmptyTranscription";
        case ErrorKind::InsufficientOverlap: return "InsufficientOverlap";
        case ErrorKind::MissingCoordinates: return "MissingCoordinates";
        case ErrorKind::MissingPath: return "MissingPath";
        case ErrorKind::ConflictingAttribute: return "ConflictingAttribute";
        case ErrorKind::MalformedGraph: return "MalformedGraph";
        case ErrorKind::DegenerateSeries: return "DegenerateSeries";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::UnknownAttribute: return "UnknownAttribute";
        case ErrorKind::RankDeficient: return "RankDeficient";
        case ErrorKind::EmptyGroup: return "EmptyGroup";
        case ErrorKind::SampleTooLarge: return "SampleTooLarge";
        case ErrorKind::NodeSetMismatch: return "NodeSetMismatch";
        case ErrorKind::InsufficientLanguages: return "InsufficientLanguages";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::UnknownAnalysis: return "UnknownAnalysis";
    }
    return "Unknown";
}

namespace {

std::string format_message(ErrorKind kind, std::string_view module, const std::string& message,
                           std::optional<std::size_t> line) {
    std::string out;
    out += module;
    out += ": ";
    out += to_string(kind);
    if (line) {
        out += " at line ";
        out += std::to_string(*line);
    }
    out += ": ";
    out += message;
    return out;
}

}  // namespace

Error::Error(ErrorKind kind, std::string_view module, const std::string& message,
             std::optional<std::size_t> line)
    : std::runtime_error(format_message(kind, module, message, line)),
      kind_(kind),
      module_(module),
      line_(line) {}

}  // namespace langgraph
