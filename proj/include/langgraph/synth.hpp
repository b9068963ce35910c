#pragma once

#include "langgraph/ingest.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace langgraph {

/// Shape of a generated world. Families share a home region, a macroarea,
/// a colexification profile and proto-forms; genera and branches perturb
/// them further, so distances carry genealogical and areal signal.
struct WorldSpec {
    std::size_t languages = 20;
    std::size_t families = 5;
    /// Each family gets at least this many languages; the rest are spread
    /// with weights 1, 1/2, 1/3, ...
    std::size_t min_family_size = 1;
    std::size_t genera_per_family = 2;
    std::size_t branches_per_genus = 2;
    /// Distinct concept pairs drawn from the builtin concept lists.
    std::size_t patterns = 1000;
    /// Languages (lowest ids first) written without coordinates.
    std::size_t missing_coordinates = 0;
    /// Probability that a language has no entry for a given wordlist concept.
    double wordlist_gap = 0.1;
    std::uint64_t seed = 42;
};

struct World {
    LanguageTable languages;
    ColexTable colex;
    RatingTable ratings;
    WordlistTable wordlists;
};

namespace synth {

World generate(const WorldSpec& spec);

/// Writes languages.tsv, colex.tsv, ratings.tsv, wordlists.tsv and a
/// config.json referencing them into `dir`.
void write_world(const World& world, const std::filesystem::path& dir);

}  // namespace synth
}  // namespace langgraph
