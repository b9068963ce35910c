#pragma once

#include "langgraph/concepts.hpp"
#include "langgraph/ingest.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace langgraph {

/// A colexification pattern (C1, C2) with C1 < C2.
struct ConceptPair {
    std::string first;
    std::string second;

    auto operator<=>(const ConceptPair&) const = default;
    bool operator==(const ConceptPair&) const = default;
};

using PatternList = std::vector<ConceptPair>;

/// Languages x patterns frequency matrix in compressed-row form. Absent
/// cells are explicit negative samples (F = 0).
class ColexMatrix {
public:
    struct Cell {
        std::uint32_t column = 0;
        std::uint64_t value = 0;
    };

    ColexMatrix() = default;
    ColexMatrix(std::vector<std::string> languages, PatternList patterns,
                std::vector<std::vector<Cell>> rows);

    const std::vector<std::string>& languages() const noexcept { return languages_; }
    const PatternList& patterns() const noexcept { return patterns_; }
    std::size_t rows() const noexcept { return languages_.size(); }
    std::size_t columns() const noexcept { return patterns_.size(); }

    std::span<const Cell> row(std::size_t i) const;
    std::uint64_t at(std::size_t i, std::size_t j) const;
    std::vector<std::uint64_t> dense_row(std::size_t i) const;
    std::optional<std::size_t> language_index(std::string_view id) const;
    /// Sum of squares of row i, accumulated in column order.
    double squared_norm(std::size_t i) const { return squared_norms_.at(i); }
    bool zero_row(std::size_t i) const { return row(i).empty(); }

private:
    std::vector<std::string> languages_;
    PatternList patterns_;
    std::vector<std::size_t> offsets_;
    std::vector<Cell> cells_;
    std::vector<double> squared_norms_;
    std::vector<std::uint32_t> sorted_index_;  // row indices ordered by id
};

namespace colex {

enum class SelectionMode {
    /// C1 or C2 is in the concept set.
    Any,
    /// Both C1 and C2 are in the concept set.
    Both,
};

/// 1 for Any, 3 for Both.
std::size_t default_min_languages(SelectionMode mode);

/// Patterns touching `set` that are attested (F > 0) in at least
/// `min_languages` distinct languages, sorted.
PatternList select_patterns(const ColexTable& table, const ConceptSet& set, SelectionMode mode,
                            std::optional<std::size_t> min_languages = std::nullopt);

/// Rows follow `languages`, columns follow `patterns`. Every language with
/// a record for a selected pattern must be listed.
ColexMatrix build_matrix(const ColexTable& table, const PatternList& patterns,
                         const std::vector<std::string>& languages);

/// Cosine distance between two matrix rows, in [0, 1].
double semantic_distance(const ColexMatrix& matrix, std::string_view lang_a, std::string_view lang_b);
double semantic_distance_rows(const ColexMatrix& matrix, std::size_t i, std::size_t j);

/// All pairs of nonzero rows. Output is identical for any thread count.
PairValueTable semantic_distance_table(const ColexMatrix& matrix, unsigned threads = 1);

/// Ids of languages whose row is all zero, in row order.
std::vector<std::string> zero_rows(const ColexMatrix& matrix);

}  // namespace colex
}  // namespace langgraph
