#pragma once

#include "langgraph/util.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace langgraph {

struct ValueRange {
    double low = 0.0;
    double high = 1.0;

    bool contains(double v) const noexcept { return v >= low && v <= high; }
    bool operator==(const ValueRange&) const = default;
};

inline constexpr ValueRange kUnitRange{0.0, 1.0};

/// Symmetric table of values over unordered language pairs.
///
/// Ids are held once, sorted; entries reference them by index with
/// `a < b`, so index order coincides with lexicographic id order. Entries
/// are sorted by (a, b) and unique.
class PairValueTable {
public:
    struct Entry {
        std::uint32_t a = 0;
        std::uint32_t b = 0;
        double value = 0.0;

        bool operator==(const Entry&) const = default;
    };

    PairValueTable() = default;

    /// `ids` must be sorted and unique. Entries may arrive in any order and
    /// orientation; they are canonicalised. Ids not referenced by any entry
    /// are dropped.
    PairValueTable(std::vector<std::string> ids, std::vector<Entry> entries,
                   std::optional<ValueRange> range = std::nullopt);

    static PairValueTable from_triples(
        std::vector<std::tuple<std::string, std::string, double>> triples,
        std::optional<ValueRange> range = std::nullopt);

    const std::vector<std::string>& ids() const noexcept { return ids_; }
    const std::string& id(std::uint32_t index) const { return ids_.at(index); }
    std::span<const Entry> entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const std::optional<ValueRange>& range() const noexcept { return range_; }

    std::optional<double> find(std::string_view a, std::string_view b) const;

    /// Same pairs with values replaced by `fn(value)`; the range is dropped
    /// unless given.
    template <typename Fn>
    PairValueTable transformed(Fn&& fn, std::optional<ValueRange> range = std::nullopt) const {
        PairValueTable out;
        out.ids_ = ids_;
        out.entries_ = entries_;
        for (auto& e : out.entries_) e.value = fn(e.value);
        out.range_ = range;
        out.validate_range();
        return out;
    }

    bool operator==(const PairValueTable&) const = default;

private:
    void validate_range() const;

    std::vector<std::string> ids_;
    std::vector<Entry> entries_;
    std::optional<ValueRange> range_;
};

struct LanguageRecord {
    std::string id;
    std::string name;
    std::string family;
    std::string genus;
    std::string parent;
    std::string branch;
    std::string macroarea;
    std::string area;
    std::optional<double> latitude;
    std::optional<double> longitude;
    /// Ancestor nodes from the root of the classification tree; may be empty.
    std::vector<std::string> classification;

    bool has_coordinates() const noexcept { return latitude.has_value() && longitude.has_value(); }
    bool operator==(const LanguageRecord&) const = default;
};

struct WordForm {
    std::string form;
    std::uint64_t count = 0;

    bool operator==(const WordForm&) const = default;
};

/// One (C1, C2, L, F) data point. `concept_a < concept_b` always.
struct ColexRecord {
    std::string concept_a;
    std::string concept_b;
    std::string language;
    std::uint64_t frequency = 0;
    std::vector<WordForm> forms;

    bool operator==(const ColexRecord&) const = default;
};

struct RatingRecord {
    std::string lemma;
    std::optional<double> concreteness;
    std::optional<double> valence;
    std::optional<double> arousal;
    std::optional<double> dominance;

    bool operator==(const RatingRecord&) const = default;
};

struct RatingScales {
    ValueRange concreteness{1.0, 5.0};
    ValueRange affect{1.0, 9.0};
};

struct WordlistEntry {
    std::string language;
    std::string concept_name;
    std::string transcription;

    bool operator==(const WordlistEntry&) const = default;
};

using LanguageTable = std::vector<LanguageRecord>;
using ColexTable = std::vector<ColexRecord>;
using RatingTable = std::vector<RatingRecord>;
using WordlistTable = std::vector<WordlistEntry>;

namespace ingest {

/// Columns: id (required), name, family, genus, parent, branch, macroarea,
/// area, latitude, longitude, classification (ancestors joined by '/').
LanguageTable load_languages(const std::filesystem::path& path, Diagnostics* diag = nullptr);

/// Columns: concept_a, concept_b, language, frequency[, forms]. Forms are
/// `form:count;form:count`. Duplicate (pair, language) rows are summed.
ColexTable load_colex(const std::filesystem::path& path, Diagnostics* diag = nullptr);

RatingTable load_ratings(const std::filesystem::path& path, const RatingScales& scales = {},
                         Diagnostics* diag = nullptr);

WordlistTable load_wordlists(const std::filesystem::path& path, Diagnostics* diag = nullptr);

/// Long format (`id_a, id_b, value`) or a square matrix whose header row
/// and first column carry the ids.
PairValueTable load_pair_matrix(const std::filesystem::path& path,
                                std::optional<ValueRange> range = std::nullopt,
                                Diagnostics* diag = nullptr);

void write_languages(const std::filesystem::path& path, const LanguageTable& table);
void write_colex(const std::filesystem::path& path, const ColexTable& table);
void write_ratings(const std::filesystem::path& path, const RatingTable& table);
void write_wordlists(const std::filesystem::path& path, const WordlistTable& table);
/// Long format `id_a\tid_b\tvalue` (comma for .csv), ids canonical, sorted.
void write_pair_table(const std::filesystem::path& path, const PairValueTable& table);
std::string pair_table_to_text(const PairValueTable& table, char delimiter = '\t');

const LanguageRecord* find_language(const LanguageTable& table, std::string_view id);

}  // namespace ingest
}  // namespace langgraph
