#pragma once

#include "langgraph/concepts.hpp"
#include "langgraph/ingest.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace langgraph {

/// Phonological distance settings. Per-concept distances are the minimum
/// over synonym pairs; the language distance is their arithmetic mean.
struct PhonDistanceSpec {
    ConceptSet concept_set;
    std::size_t min_shared_concepts = 20;

    /// Nuclear concepts, 20 shared concepts required.
    static PhonDistanceSpec defaults();
};

namespace phon {

/// Levenshtein distance over code points divided by the longer length.
double ldn(std::u32string_view a, std::u32string_view b);
double ldn(std::string_view a, std::string_view b);

/// Plain edit distance over code points.
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);

/// Transcriptions grouped by language then by concept, decoded to code
/// points and restricted to a concept set.
class WordlistIndex {
public:
    WordlistIndex(const WordlistTable& table, const ConceptSet& concept_set);

    /// Languages in id order.
    const std::vector<std::string>& languages() const noexcept { return languages_; }
    bool contains(std::string_view language) const;

    // forms[language][concept] -> synonyms; concepts are column indices
    // into the concept set.
    using Forms = std::vector<std::vector<std::u32string>>;
    const Forms& forms(std::size_t language_index) const { return forms_.at(language_index); }
    std::optional<std::size_t> index_of(std::string_view language) const;

private:
    std::vector<std::string> languages_;
    std::vector<Forms> forms_;
};

double phonological_distance(const WordlistTable& wordlists, std::string_view lang_a,
                             std::string_view lang_b, const PhonDistanceSpec& spec);
double phonological_distance(const WordlistIndex& index, std::size_t a, std::size_t b,
                             const PhonDistanceSpec& spec);

/// Pairs below the overlap threshold are omitted.
PairValueTable phonological_distance_table(const WordlistTable& wordlists,
                                           const PhonDistanceSpec& spec, unsigned threads = 1);

}  // namespace phon
}  // namespace langgraph
