#include "langgraph/colex.hpp"

#include "langgraph/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

namespace langgraph {

namespace {

constexpr std::string_view kModule = "colex";

double cosine_distance(double dot, double norm_a, double norm_b) {
    const double d = 1.0 - dot / std::sqrt(norm_a * norm_b);
    return std::clamp(d, 0.0, 1.0);
}

}  // namespace

ColexMatrix::ColexMatrix(std::vector<std::string> languages, PatternList patterns,
                         std::vector<std::vector<Cell>> rows)
    : languages_(std::move(languages)), patterns_(std::move(patterns)) {
    if (rows.size() != languages_.size()) {
        throw Error(ErrorKind::MalformedRow, kModule, "row count does not match language count");
    }
    offsets_.reserve(rows.size() + 1);
    offsets_.push_back(0);
    squared_norms_.reserve(rows.size());
    std::vector<char> column_used(patterns_.size(), 0);
    for (auto& r : rows) {
        std::sort(r.begin(), r.end(), [](const Cell& x, const Cell& y) { return x.column < y.column; });
        double sq = 0.0;
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (r[k].column >= patterns_.size() || (k && r[k].column == r[k - 1].column)) {
                throw Error(ErrorKind::MalformedRow, kModule, "invalid or repeated matrix column");
            }
            if (r[k].value == 0) continue;
            const double v = static_cast<double>(r[k].value);
            sq += v * v;
            column_used[r[k].column] = 1;
            cells_.push_back(r[k]);
        }
        squared_norms_.push_back(sq);
        offsets_.push_back(cells_.size());
    }
    for (std::size_t j = 0; j < patterns_.size(); ++j) {
        if (!column_used[j]) {
            throw Error(ErrorKind::UnattestedPattern, kModule,
                        "pattern (" + patterns_[j].first + ", " + patterns_[j].second +
                            ") has no attestation");
        }
    }
    sorted_index_.resize(languages_.size());
    for (std::uint32_t i = 0; i < sorted_index_.size(); ++i) sorted_index_[i] = i;
    std::sort(sorted_index_.begin(), sorted_index_.end(),
              [&](std::uint32_t a, std::uint32_t b) { return languages_[a] < languages_[b]; });
    for (std::size_t k = 1; k < sorted_index_.size(); ++k) {
        if (languages_[sorted_index_[k]] == languages_[sorted_index_[k - 1]]) {
            throw Error(ErrorKind::DuplicateId, kModule,
                        "language '" + languages_[sorted_index_[k]] + "' listed twice");
        }
    }
}

std::span<const ColexMatrix::Cell> ColexMatrix::row(std::size_t i) const {
    if (i >= languages_.size()) throw std::out_of_range("ColexMatrix::row");
    return {cells_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

std::uint64_t ColexMatrix::at(std::size_t i, std::size_t j) const {
    const auto r = row(i);
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const Cell& c, std::size_t col) { return c.column < col; });
    return (it != r.end() && it->column == j) ? it->value : 0;
}

std::vector<std::uint64_t> ColexMatrix::dense_row(std::size_t i) const {
    std::vector<std::uint64_t> out(patterns_.size(), 0);
    for (const auto& c : row(i)) out[c.column] = c.value;
    return out;
}

std::optional<std::size_t> ColexMatrix::language_index(std::string_view id) const {
    auto it = std::lower_bound(sorted_index_.begin(), sorted_index_.end(), id,
                               [&](std::uint32_t k, std::string_view v) { return languages_[k] < v; });
    if (it == sorted_index_.end() || languages_[*it] != id) return std::nullopt;
    return *it;
}

namespace colex {

std::size_t default_min_languages(SelectionMode mode) { return mode == SelectionMode::Both ? 3 : 1; }

PatternList select_patterns(const ColexTable& table, const ConceptSet& set, SelectionMode mode,
                            std::optional<std::size_t> min_languages) {
    if (table.empty()) throw Error(ErrorKind::EmptyPatternList, kModule, "colexification table is empty");
    const std::size_t threshold = min_languages.value_or(default_min_languages(mode));
    std::map<ConceptPair, std::set<std::string_view>> attested;
    for (const auto& r : table) {
        if (r.frequency == 0) continue;
        const bool in_a = set.contains(r.concept_a);
        const bool in_b = set.contains(r.concept_b);
        const bool keep = mode == SelectionMode::Any ? (in_a || in_b) : (in_a && in_b);
        if (!keep) continue;
        attested[ConceptPair{r.concept_a, r.concept_b}].insert(r.language);
    }
    PatternList out;
    for (const auto& [pattern, langs] : attested) {
        if (langs.size() >= threshold) out.push_back(pattern);
    }
    if (out.empty()) {
        throw Error(ErrorKind::EmptyPatternList, kModule,
                    "no pattern for concept set '" + set.name() + "' meets the threshold of " +
                        std::to_string(threshold) + " languages");
    }
    return out;
}

ColexMatrix build_matrix(const ColexTable& table, const PatternList& patterns,
                         const std::vector<std::string>& languages) {
    if (languages.empty()) throw Error(ErrorKind::UnknownLanguageId, kModule, "language list is empty");
    std::map<ConceptPair, std::uint32_t> column_of;
    for (std::uint32_t j = 0; j < patterns.size(); ++j) {
        if (!column_of.emplace(patterns[j], j).second) {
            throw Error(ErrorKind::MalformedRow, kModule,
                        "pattern (" + patterns[j].first + ", " + patterns[j].second + ") repeated");
        }
    }
    std::unordered_map<std::string_view, std::uint32_t> row_of;
    for (std::uint32_t i = 0; i < languages.size(); ++i) row_of.emplace(languages[i], i);

    std::vector<std::map<std::uint32_t, std::uint64_t>> acc(languages.size());
    std::set<std::string> unknown;
    ConceptPair key;
    for (const auto& r : table) {
        key.first = r.concept_a;
        key.second = r.concept_b;
        auto col = column_of.find(key);
        if (col == column_of.end()) continue;
        auto row = row_of.find(r.language);
        if (row == row_of.end()) {
            unknown.insert(r.language);
            continue;
        }
        acc[row->second][col->second] += r.frequency;
    }
    if (!unknown.empty()) {
        std::string msg = "colexification records reference unknown languages:";
        for (const auto& id : unknown) msg += " " + id;
        throw Error(ErrorKind::UnknownLanguageId, kModule, msg);
    }
    std::vector<std::vector<ColexMatrix::Cell>> rows(languages.size());
    for (std::size_t i = 0; i < acc.size(); ++i) {
        rows[i].reserve(acc[i].size());
        for (const auto& [col, value] : acc[i]) rows[i].push_back({col, value});
    }
    return ColexMatrix(languages, patterns, std::move(rows));
}

double semantic_distance_rows(const ColexMatrix& matrix, std::size_t i, std::size_t j) {
    const double na = matrix.squared_norm(i);
    const double nb = matrix.squared_norm(j);
    if (na == 0.0 || nb == 0.0) {
        throw Error(ErrorKind::ZeroVector, kModule,
                    "language '" + matrix.languages()[na == 0.0 ? i : j] +
                        "' has no attested pattern");
    }
    const auto ra = matrix.row(i);
    const auto rb = matrix.row(j);
    double dot = 0.0;
    auto a = ra.begin();
    auto b = rb.begin();
    while (a != ra.end() && b != rb.end()) {
        if (a->column < b->column) {
            ++a;
        } else if (b->column < a->column) {
            ++b;
        } else {
            dot += static_cast<double>(a->value) * static_cast<double>(b->value);
            ++a;
            ++b;
        }
    }
    return cosine_distance(dot, na, nb);
}

double semantic_distance(const ColexMatrix& matrix, std::string_view lang_a, std::string_view lang_b) {
    auto i = matrix.language_index(lang_a);
    auto j = matrix.language_index(lang_b);
    if (!i || !j) {
        throw Error(ErrorKind::UnknownLanguageId, kModule,
                    "language '" + std::string(!i ? lang_a : lang_b) + "' not in matrix");
    }
    return semantic_distance_rows(matrix, *i, *j);
}

PairValueTable semantic_distance_table(const ColexMatrix& matrix, unsigned threads) {
    // Nonzero rows in id order; pair (p, q) with p < q is canonical.
    std::vector<std::uint32_t> order;
    for (std::uint32_t i = 0; i < matrix.rows(); ++i) {
        if (!matrix.zero_row(i)) order.push_back(i);
    }
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return matrix.languages()[a] < matrix.languages()[b];
    });
    const std::size_t k = order.size();
    std::vector<std::string> ids;
    ids.reserve(k);
    for (auto i : order) ids.push_back(matrix.languages()[i]);

    std::vector<std::size_t> offset(k + 1, 0);
    for (std::size_t p = 0; p < k; ++p) offset[p + 1] = offset[p] + (k - 1 - p);
    std::vector<PairValueTable::Entry> entries(offset[k]);

    util::parallel_for(k, threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> dense(matrix.columns(), 0.0);
        for (std::size_t p = begin; p < end; ++p) {
            const auto rp = matrix.row(order[p]);
            for (const auto& c : rp) dense[c.column] = static_cast<double>(c.value);
            const double np = matrix.squared_norm(order[p]);
            std::size_t out = offset[p];
            for (std::size_t q = p + 1; q < k; ++q) {
                double dot = 0.0;
                for (const auto& c : matrix.row(order[q])) {
                    dot += dense[c.column] * static_cast<double>(c.value);
                }
                entries[out++] = {static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q),
                                  cosine_distance(dot, np, matrix.squared_norm(order[q]))};
            }
            for (const auto& c : rp) dense[c.column] = 0.0;
        }
    });
    return PairValueTable(std::move(ids), std::move(entries), kUnitRange);
}

std::vector<std::string> zero_rows(const ColexMatrix& matrix) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        if (matrix.zero_row(i)) out.push_back(matrix.languages()[i]);
    }
    return out;
}

}  // namespace colex
}  // namespace langgraph
