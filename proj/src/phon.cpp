#include "langgraph/phon.hpp"

#include "langgraph/error.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace langgraph {

namespace {

constexpr std::string_view kModule = "phon";

void validate(const PhonDistanceSpec& spec) {
    if (spec.min_shared_concepts < 1 || spec.min_shared_concepts > spec.concept_set.size()) {
        throw Error(ErrorKind::InvalidConfig, kModule,
                    "min_shared_concepts must lie in [1, " +
                        std::to_string(spec.concept_set.size()) + "]");
    }
}

struct PairScore {
    std::size_t shared = 0;
    double distance = 0.0;
};

PairScore score(const phon::WordlistIndex::Forms& fa, const phon::WordlistIndex::Forms& fb) {
    PairScore s;
    double sum = 0.0;
    for (std::size_t c = 0; c < fa.size(); ++c) {
        if (fa[c].empty() || fb[c].empty()) continue;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& x : fa[c]) {
            for (const auto& y : fb[c]) best = std::min(best, phon::ldn(x, y));
        }
        sum += best;
        ++s.shared;
    }
    if (s.shared) s.distance = sum / static_cast<double>(s.shared);
    return s;
}

}  // namespace

PhonDistanceSpec PhonDistanceSpec::defaults() {
    return PhonDistanceSpec{concepts::builtin_set("nuclear"), 20};
}

namespace phon {

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
    if (a.size() < b.size()) std::swap(a, b);
    std::vector<std::size_t> costs(b.size() + 1);
    std::iota(costs.begin(), costs.end(), std::size_t{0});
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::size_t diag = costs[0];
        costs[0] = i + 1;
        for (std::size_t j = 0; j < b.size(); ++j) {
            const std::size_t up = costs[j + 1];
            const std::size_t sub = diag + (a[i] == b[j] ? 0 : 1);
            costs[j + 1] = std::min({up + 1, costs[j] + 1, sub});
            diag = up;
        }
    }
    return costs[b.size()];
}

double ldn(std::u32string_view a, std::u32string_view b) {
    if (a.empty() || b.empty()) {
        throw Error(ErrorKind::EmptyTranscription, kModule, "transcription is empty");
    }
    const auto longest = std::max(a.size(), b.size());
    return static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

double ldn(std::string_view a, std::string_view b) {
    return ldn(util::decode_utf8(a), util::decode_utf8(b));
}

WordlistIndex::WordlistIndex(const WordlistTable& table, const ConceptSet& concept_set) {
    const auto& members = concept_set.members();
    std::vector<std::string> sorted_members = members;
    std::vector<std::size_t> member_pos(members.size());
    std::iota(member_pos.begin(), member_pos.end(), std::size_t{0});
    std::sort(member_pos.begin(), member_pos.end(),
              [&](std::size_t x, std::size_t y) { return members[x] < members[y]; });
    std::sort(sorted_members.begin(), sorted_members.end());
    auto column = [&](const std::string& concept_label) -> std::optional<std::size_t> {
        auto it = std::lower_bound(sorted_members.begin(), sorted_members.end(), concept_label);
        if (it == sorted_members.end() || *it != concept_label) return std::nullopt;
        return member_pos[static_cast<std::size_t>(it - sorted_members.begin())];
    };

    for (const auto& e : table) languages_.push_back(e.language);
    std::sort(languages_.begin(), languages_.end());
    languages_.erase(std::unique(languages_.begin(), languages_.end()), languages_.end());
    forms_.assign(languages_.size(), Forms(members.size()));
    for (const auto& e : table) {
        auto col = column(concepts::normalize(e.concept_name));
        if (!col) continue;
        if (e.transcription.empty()) {
            throw Error(ErrorKind::EmptyTranscription, kModule,
                        "empty transcription for " + e.language + "/" + e.concept_name);
        }
        auto& synonyms = forms_[*index_of(e.language)][*col];
        auto decoded = util::decode_utf8(e.transcription);
        if (std::find(synonyms.begin(), synonyms.end(), decoded) == synonyms.end()) {
            synonyms.push_back(std::move(decoded));
        }
    }
}

std::optional<std::size_t> WordlistIndex::index_of(std::string_view language) const {
    auto it = std::lower_bound(languages_.begin(), languages_.end(), language);
    if (it == languages_.end() || *it != language) return std::nullopt;
    return static_cast<std::size_t>(it - languages_.begin());
}

bool WordlistIndex::contains(std::string_view language) const { return index_of(language).has_value(); }

double phonological_distance(const WordlistIndex& index, std::size_t a, std::size_t b,
                             const PhonDistanceSpec& spec) {
    validate(spec);
    const auto s = score(index.forms(a), index.forms(b));
    if (s.shared < spec.min_shared_concepts) {
        throw Error(ErrorKind::InsufficientOverlap, kModule,
                    index.languages()[a] + " and " + index.languages()[b] + " share " +
                        std::to_string(s.shared) + " concepts, need " +
                        std::to_string(spec.min_shared_concepts));
    }
    return s.distance;
}

double phonological_distance(const WordlistTable& wordlists, std::string_view lang_a,
                             std::string_view lang_b, const PhonDistanceSpec& spec) {
    const WordlistIndex index(wordlists, spec.concept_set);
    auto a = index.index_of(lang_a);
    auto b = index.index_of(lang_b);
    if (!a || !b) {
        throw Error(ErrorKind::UnknownLanguageId, kModule,
                    "no wordlist for '" + std::string(!a ? lang_a : lang_b) + "'");
    }
    return phonological_distance(index, *a, *b, spec);
}

PairValueTable phonological_distance_table(const WordlistTable& wordlists,
                                           const PhonDistanceSpec& spec, unsigned threads) {
    validate(spec);
    const WordlistIndex index(wordlists, spec.concept_set);
    const std::size_t n = index.languages().size();
    // Per-row buffers keep output independent of scheduling.
    std::vector<std::vector<PairValueTable::Entry>> rows(n);
    util::parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto& fi = index.forms(i);
            for (std::size_t j = i + 1; j < n; ++j) {
                const auto s = score(fi, index.forms(j));
                if (s.shared < spec.min_shared_concepts) continue;
                rows[i].push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                                   s.distance});
            }
        }
    });
    std::size_t total = 0;
    for (const auto& r : rows) total += r.size();
    std::vector<PairValueTable::Entry> entries;
    entries.reserve(total);
    for (auto& r : rows) {
        entries.insert(entries.end(), r.begin(), r.end());
        r.clear();
        r.shrink_to_fit();
    }
    return PairValueTable(index.languages(), std::move(entries), kUnitRange);
}

}  // namespace phon
}  // namespace langgraph
