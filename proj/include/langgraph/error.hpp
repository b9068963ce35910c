#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace langgraph {

enum class ErrorKind {
    // ingest
    IoFailure,
    MissingColumn,
    MalformedRow,
    DuplicateId,
    CoordinateOutOfRange,
    MalformedForms,
    NegativeFrequency,
    SelfColexification,
    RatingOutOfScale,
    AsymmetricMatrix,
    ValueOutOfRange,
    DuplicatePair,
    // concepts
    UnknownSetName,
    EmptyResult,
    // colex
    EmptyPatternList,
    UnattestedPattern,
    UnknownLanguageId,
    ZeroVector,
    // phon
    EmptyTranscription,
    InsufficientOverlap,
    // geo
    MissingCoordinates,
    // graph
    MissingPath,
    ConflictingAttribute,
    MalformedGraph,
    // stats
    DegenerateSeries,
    LengthMismatch,
    UnknownAttribute,
    RankDeficient,
    EmptyGroup,
    SampleTooLarge,
    NodeSetMismatch,
    InsufficientLanguages,
    // cli
    InvalidConfig,
    UnknownAnalysis,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. Carries a kind, the module that
/// raised it and, for file parsing, the 1-based line number.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string_view module, const std::string& message,
          std::optional<std::size_t> line = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& module() const noexcept { return module_; }
    std::optional<std::size_t> line() const noexcept { return line_; }

private:
    ErrorKind kind_;
    std::string module_;
    std::optional<std::size_t> line_;
};

}  // namespace langgraph
