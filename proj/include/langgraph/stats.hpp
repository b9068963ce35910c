#pragma once

#include "langgraph/graph.hpp"
#include "langgraph/util.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace langgraph {

struct CorrelationResult {
    std::string group;
    double r = 0.0;
    /// Fisher z interval; [-1, 1] at n = 3, collapsed at |r| = 1.
    double ci_low = -1.0;
    double ci_high = 1.0;
    double p_value = 1.0;
    std::size_t n = 0;
};

struct Coefficient {
    std::string name;
    double estimate = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double t = 0.0;
    double p_value = 1.0;
};

struct OlsResult {
    /// Intercept first, then one entry per predictor.
    std::vector<Coefficient> coefficients;
    std::vector<double> residuals;
    std::size_t n = 0;
    double r_squared = 0.0;
};

struct BetaResult {
    std::string target;
    std::string predictor;
    std::vector<std::string> controls;
    /// Relatedness level name, `all` when ungrouped, or `mean`.
    std::string group;
    double beta = 0.0;
    std::pair<double, double> ci95{0.0, 0.0};
    double p_value = 1.0;
    std::size_t n = 0;
};

/// Community label per node id.
using Partition = std::map<std::string, std::uint32_t>;

struct SimilarityEdge {
    std::string a;
    std::string b;
    double distance = 0.0;  // weight is 1 - distance
};

struct FamilyAriReport {
    std::string family;
    std::size_t languages = 0;
    std::vector<std::string> sets;
    /// Symmetric sets x sets matrix; diagonal is 1.
    std::vector<std::vector<double>> ari;
    std::vector<Partition> partitions;
};

struct DistanceHistogram {
    Attribute attribute = Attribute::Nuclear;
    std::size_t bins = 64;
    /// counts[level][bin], levels in kRelatednessLevels order.
    std::array<std::vector<std::size_t>, 4> counts;
};

namespace stats {

enum class GroupKey {
    /// One group per shared macroarea plus `cross` for mixed pairs.
    Macroarea,
    /// Only the pairs whose endpoints lie in different macroareas.
    Cross,
    /// One group per relatedness level.
    Relatedness,
};

std::optional<GroupKey> parse_group_key(std::string_view text);

/// Pearson r with a two-sided p-value from Student's t on n - 2 degrees of
/// freedom.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y, std::string group = {});

/// Groups with fewer than three complete edges are omitted with a warning.
std::vector<CorrelationResult> group_pearson(const LanguageGraph& graph, Attribute x, Attribute y,
                                             GroupKey key, Diagnostics* diag = nullptr);

/// Least squares with an intercept. `names` labels the predictors.
OlsResult ols(const std::vector<std::vector<double>>& predictors, std::span<const double> y,
              const std::vector<std::string>& names = {});

/// Z-scores target, predictor and controls within each analysed group and
/// regresses target ~ predictor + controls. Grouped output ends with a
/// `mean` row averaging the per-group betas.
std::vector<BetaResult> standardized_beta(const LanguageGraph& graph, Attribute target,
                                          Attribute predictor, const std::vector<Attribute>& controls,
                                          bool by_relatedness, Diagnostics* diag = nullptr);

/// Quota per group, proportional to size with largest-remainder rounding;
/// every nonempty group gets at least one when total >= group count.
std::vector<std::size_t> allocate_quotas(const std::vector<std::size_t>& sizes, std::size_t total);

/// Edge indices (sorted) sampled per group. Only edges with every attribute
/// in `required` present form the population.
std::vector<std::size_t> stratified_sample(const LanguageGraph& graph, GroupKey key, std::size_t total_n,
                                           std::uint64_t seed,
                                           const std::vector<Attribute>& required = {});

/// Group name for an edge under `key`, or nullopt when the edge is not in
/// any group (missing macroarea, or same-macroarea under Cross).
std::optional<std::string> group_of(const LanguageGraph& graph, std::size_t edge, GroupKey key);

/// Greedy modularity maximisation (local moving plus aggregation) on
/// weights 1 - distance. Nodes are visited in id order and ties go to the
/// smaller community label, so the result is fully deterministic.
Partition detect_communities(const std::vector<std::string>& nodes,
                             const std::vector<SimilarityEdge>& edges);

double modularity(const Partition& partition, const std::vector<SimilarityEdge>& edges);

double adjusted_rand_index(const Partition& p1, const Partition& p2);

std::vector<FamilyAriReport> family_ari_report(const LanguageGraph& graph,
                                               const std::vector<Attribute>& sets, std::size_t top_k,
                                               Diagnostics* diag = nullptr);

DistanceHistogram distance_histogram(const LanguageGraph& graph, Attribute attribute,
                                     std::size_t bins = 64);

}  // namespace stats
}  // namespace langgraph
