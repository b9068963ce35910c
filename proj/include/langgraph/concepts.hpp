#pragma once

#include "langgraph/ingest.hpp"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace langgraph {

/// Named, ordered set of case-folded concept labels.
class ConceptSet {
public:
    ConceptSet() = default;
    /// Members are trimmed and lower-cased; empty labels and repeats are
    /// rejected.
    ConceptSet(std::string name, const std::vector<std::string>& members);

    const std::string& name() const noexcept { return name_; }
    const std::vector<std::string>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool contains(std::string_view concept_label) const;

    bool operator==(const ConceptSet&) const = default;

private:
    std::string name_;
    std::vector<std::string> members_;
    std::set<std::string, std::less<>> lookup_;
};

namespace concepts {

std::string normalize(std::string_view label);

/// The four frozen lists: nuclear, non-nuclear, emotion, random.
ConceptSet builtin_set(std::string_view name);
const std::vector<std::string>& builtin_set_names();

enum class Concreteness { Abstract, Concrete };

/// Abstract keeps ratings strictly below 3, concrete strictly above 4.
ConceptSet filter_by_concreteness(const RatingTable& ratings, Concreteness mode,
                                  std::string name = {});

enum class AffectRule {
    /// Each of valence, arousal and dominance lies outside [4, 6]
    /// independently.
    PerRating,
    /// All three below 4, or all three above 6.
    SameSide,
};

/// Keeps members of `base` whose three affect ratings are all outside the
/// closed band [4, 6]. Members without all three ratings are dropped.
ConceptSet filter_by_affect(const ConceptSet& base, const RatingTable& ratings,
                            AffectRule rule = AffectRule::PerRating, std::string name = {});

struct Overlap {
    std::string set_a;
    std::string set_b;
    std::string concept_label;

    bool operator==(const Overlap&) const = default;
};

/// Every concept shared by two of the given sets; empty means disjoint.
std::vector<Overlap> assert_mutually_exclusive(const std::vector<ConceptSet>& sets);

}  // namespace concepts
}  // namespace langgraph
