#pragma once

#include "langgraph/geo.hpp"
#include "langgraph/ingest.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace langgraph {

enum class RelatednessLevel : std::uint8_t {
    Lower,      // identical branch
    Mid,        // identical genus
    Higher,     // identical family
    Unrelated,
};

inline constexpr std::array<RelatednessLevel, 4> kRelatednessLevels{
    RelatednessLevel::Lower, RelatednessLevel::Mid, RelatednessLevel::Higher,
    RelatednessLevel::Unrelated};

std::string_view to_string(RelatednessLevel level);
std::optional<RelatednessLevel> parse_relatedness(std::string_view text);

/// Edge attributes stored in the graph. The declaration order is the
/// column order of the edges-tsv export (relatedness sits after neighbour).
enum class Attribute : std::uint8_t {
    GeoDist,
    ContactDist,
    Neighbour,
    Genetic,
    Phon,
    Syntactic,
    Nuclear,
    NonNuclear,
    Emotion,
    Random,
    Concrete,
    Abstract,
    AffConcrete,
    AffAbstract,
};

inline constexpr std::size_t kAttributeCount = 14;

std::string_view attribute_name(Attribute attribute);
/// Accepts canonical names plus the dotted aliases (`geo.dist`, `contact.dist`).
std::optional<Attribute> parse_attribute(std::string_view name);
/// Semantic attribute for a concept-set name such as `nuclear` or `aff.abstract`.
std::optional<Attribute> semantic_attribute(std::string_view concept_set_name);
const std::array<Attribute, 8>& semantic_attributes();
const std::array<Attribute, kAttributeCount>& all_attributes();

/// One edge materialised with optionals for missing values.
struct EdgeAttributes {
    std::optional<double> geo_dist;
    std::optional<double> contact_dist;
    std::optional<int> neighbour;
    RelatednessLevel relatedness = RelatednessLevel::Unrelated;
    /// Branch, genus or family name shared at `relatedness`; empty if unrelated.
    std::string shared_label;
    std::optional<double> genetic;
    std::optional<double> phon;
    std::optional<double> syntactic;
    std::array<std::optional<double>, 8> semantic;

    std::optional<double> get(Attribute attribute) const;
};

/// Raw input for one attribute. GeoDist takes kilometres and ContactDist
/// takes in-between counts; both are rescaled on assembly and ContactDist
/// also yields the neighbour flag. All other attributes must lie in [0, 1].
struct AttributeSource {
    Attribute attribute;
    PairValueTable table;
    std::string provenance;
};

struct GraphConfig {
    ContactConfig contact;
};

/// Language nodes plus columnar edge attributes. Nodes are sorted by id and
/// edges by (a, b) node index, so pair keys are canonical.
class LanguageGraph {
public:
    struct EdgeKey {
        std::uint32_t a = 0;
        std::uint32_t b = 0;
        bool operator==(const EdgeKey&) const = default;
    };

    LanguageGraph() = default;

    static LanguageGraph assemble(LanguageTable nodes, std::vector<AttributeSource> sources,
                                  const GraphConfig& config = {});

    /// Rebuilds a graph from already-processed columns (NaN = missing).
    static LanguageGraph from_columns(LanguageTable nodes, std::vector<EdgeKey> keys,
                                      std::map<Attribute, std::vector<double>> columns,
                                      std::map<std::string, std::string> provenance);

    const LanguageTable& nodes() const noexcept { return nodes_; }
    std::optional<std::uint32_t> node_index(std::string_view id) const;
    std::size_t edge_count() const noexcept { return keys_.size(); }
    EdgeKey key(std::size_t edge) const { return keys_.at(edge); }
    const std::string& id_a(std::size_t edge) const { return nodes_[keys_[edge].a].id; }
    const std::string& id_b(std::size_t edge) const { return nodes_[keys_[edge].b].id; }
    std::optional<std::size_t> find_edge(std::string_view a, std::string_view b) const;

    bool has_attribute(Attribute attribute) const;
    /// Values per edge, NaN where missing; empty if the attribute is absent.
    std::span<const double> column(Attribute attribute) const;
    std::optional<double> value(std::size_t edge, Attribute attribute) const;
    RelatednessLevel relatedness(std::size_t edge) const { return relatedness_.at(edge); }
    EdgeAttributes edge(std::size_t edge) const;

    const std::map<std::string, std::string>& provenance() const noexcept { return provenance_; }

    /// Missing values compare equal to each other.
    bool operator==(const LanguageGraph& other) const;

private:
    void finish();

    LanguageTable nodes_;
    std::vector<EdgeKey> keys_;
    std::array<std::vector<double>, kAttributeCount> columns_;
    std::array<bool, kAttributeCount> present_{};
    std::vector<RelatednessLevel> relatedness_;
    std::map<std::string, std::string> provenance_;
};

namespace graph {

RelatednessLevel relatedness_level(const LanguageRecord& a, const LanguageRecord& b);
std::string shared_label(const LanguageRecord& a, const LanguageRecord& b);

/// 1 - (longest common prefix) / (longer path length).
double genetic_distance(std::span<const std::string> path_a, std::span<const std::string> path_b);
double genetic_distance(const LanguageRecord& a, const LanguageRecord& b);

/// Prefix-formula distances over every pair of languages that both carry
/// a classification path.
PairValueTable genetic_distance_table(const LanguageTable& languages, unsigned threads = 1);

enum class GraphFormat { EdgesTsv, Json };

std::string to_edges_tsv(const LanguageGraph& graph);
std::string to_json(const LanguageGraph& graph);
LanguageGraph from_json(std::string_view text);

void export_graph(const LanguageGraph& graph, const std::filesystem::path& path, GraphFormat format);
LanguageGraph import_graph(const std::filesystem::path& path);

}  // namespace graph
}  // namespace langgraph
