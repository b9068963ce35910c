#pragma once

#include "langgraph/concepts.hpp"
#include "langgraph/error.hpp"
#include "langgraph/graph.hpp"
#include "langgraph/util.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace langgraph {

/// Inputs and thresholds for `build`. Paths in a config file are relative
/// to the file's directory.
struct BuildConfig {
    std::optional<std::filesystem::path> languages;
    std::optional<std::filesystem::path> colex;
    std::optional<std::filesystem::path> ratings;
    std::optional<std::filesystem::path> wordlists;
    std::optional<std::filesystem::path> genetic_matrix;
    std::optional<std::filesystem::path> syntactic_matrix;
    std::optional<std::filesystem::path> phon_matrix;
    /// Unset means every set the inputs allow.
    std::optional<std::vector<std::string>> concept_sets;
    std::size_t min_languages_any = 1;
    std::size_t min_languages_both = 3;
    std::size_t min_shared_concepts = 20;
    std::uint32_t neighbour_threshold = 10;
    std::uint64_t seed = 42;
    std::filesystem::path output_dir = "langgraph_out";
    unsigned threads = 1;
    concepts::AffectRule affect_mode = concepts::AffectRule::PerRating;
};

namespace cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 2;
inline constexpr int kDataError = 3;
inline constexpr int kInternalError = 4;

/// Reads a flat JSON object; unknown keys and wrong types are InvalidConfig.
BuildConfig load_config(const std::filesystem::path& path);

/// Required inputs present, referenced files exist, thresholds positive.
void validate(const BuildConfig& config);

struct BuildResult {
    LanguageGraph graph;
    /// build_report.json contents.
    std::string report;
    /// Raw kilometres and in-between counts behind contact_edges.tsv.
    geo::GeoTables geo;
};

/// Runs the whole pipeline in memory; nothing is written.
BuildResult build_graph(const BuildConfig& config, Diagnostics& diag);

/// Writes graph.json, edges.tsv, contact_edges.tsv and build_report.json.
BuildResult cmd_build(const BuildConfig& config, Diagnostics& diag);

/// Exit code for an exception escaping a subcommand.
int exit_code_for(ErrorKind kind);

/// Entry point shared by the executable and the tests. `args` excludes
/// the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cli
}  // namespace langgraph
