#include "langgraph/concepts.hpp"

#include "langgraph/error.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace langgraph {

namespace {

constexpr std::string_view kModule = "concepts";

// Generated from data/concepts/*.txt at configure time.
struct BuiltinList {
    const char* name;
    const char* text;
};
constexpr BuiltinList kBuiltinLists[] = {
#include "builtin_concepts.inc"
};

}  // namespace

ConceptSet::ConceptSet(std::string name, const std::vector<std::string>& members)
    : name_(std::move(name)) {
    for (const auto& raw : members) {
        auto m = concepts::normalize(raw);
        if (m.empty()) throw Error(ErrorKind::MalformedRow, kModule, "empty concept in " + name_);
        if (!lookup_.insert(m).second) {
            throw Error(ErrorKind::MalformedRow, kModule,
                        "concept '" + m + "' listed twice in " + name_);
        }
        members_.push_back(std::move(m));
    }
    if (members_.empty()) {
        throw Error(ErrorKind::EmptyResult, kModule, "concept set '" + name_ + "' is empty");
    }
}

bool ConceptSet::contains(std::string_view concept_label) const {
    if (lookup_.find(concept_label) != lookup_.end()) return true;
    const auto n = concepts::normalize(concept_label);
    return lookup_.find(n) != lookup_.end();
}

namespace concepts {

std::string normalize(std::string_view label) { return util::to_lower(util::trim(label)); }

const std::vector<std::string>& builtin_set_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& l : kBuiltinLists) out.emplace_back(l.name);
        return out;
    }();
    return names;
}

ConceptSet builtin_set(std::string_view name) {
    const auto key = normalize(name);
    for (const auto& l : kBuiltinLists) {
        if (key != l.name) continue;
        std::vector<std::string> members;
        for (auto& line : util::split(l.text, '\n')) {
            auto t = util::trim(line);
            if (!t.empty()) members.push_back(std::move(t));
        }
        return ConceptSet(l.name, members);
    }
    throw Error(ErrorKind::UnknownSetName, kModule, "no builtin concept set '" + std::string(name) + "'");
}

ConceptSet filter_by_concreteness(const RatingTable& ratings, Concreteness mode, std::string name) {
    if (name.empty()) name = mode == Concreteness::Abstract ? "abstract" : "concrete";
    std::vector<std::string> members;
    std::set<std::string> seen;
    for (const auto& r : ratings) {
        if (!r.concreteness) continue;
        const double c = *r.concreteness;
        const bool keep = mode == Concreteness::Abstract ? c < 3.0 : c > 4.0;
        if (!keep) continue;
        auto m = normalize(r.lemma);
        if (seen.insert(m).second) members.push_back(std::move(m));
    }
    if (members.empty()) {
        throw Error(ErrorKind::EmptyResult, kModule, "no lemma passes the " + name + " threshold");
    }
    return ConceptSet(std::move(name), members);
}

ConceptSet filter_by_affect(const ConceptSet& base, const RatingTable& ratings, AffectRule rule,
                            std::string name) {
    if (name.empty()) name = "aff." + base.name();
    std::map<std::string, const RatingRecord*> by_lemma;
    for (const auto& r : ratings) by_lemma.emplace(normalize(r.lemma), &r);

    auto outside = [](double v) { return v < 4.0 || v > 6.0; };
    std::vector<std::string> members;
    for (const auto& m : base.members()) {
        auto it = by_lemma.find(m);
        if (it == by_lemma.end()) continue;
        const auto& r = *it->second;
        if (!r.valence || !r.arousal || !r.dominance) continue;
        const double v = *r.valence, a = *r.arousal, d = *r.dominance;
        bool keep = false;
        if (rule == AffectRule::PerRating) {
            keep = outside(v) && outside(a) && outside(d);
        } else {
            keep = (v < 4.0 && a < 4.0 && d < 4.0) || (v > 6.0 && a > 6.0 && d > 6.0);
        }
        if (keep) members.push_back(m);
    }
    if (members.empty()) {
        throw Error(ErrorKind::EmptyResult, kModule,
                    "no member of '" + base.name() + "' is affectively loaded");
    }
    return ConceptSet(std::move(name), members);
}

std::vector<Overlap> assert_mutually_exclusive(const std::vector<ConceptSet>& sets) {
    std::vector<Overlap> out;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            for (const auto& m : sets[i].members()) {
                if (sets[j].contains(m)) out.push_back({sets[i].name(), sets[j].name(), m});
            }
        }
    }
    return out;
}

}  // namespace concepts
}  // namespace langgraph
