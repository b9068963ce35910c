#pragma once

#include "langgraph/error.hpp"
#include "langgraph/graph.hpp"
#include "langgraph/ingest.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <unistd.h>

namespace testing {

inline std::filesystem::path source_dir() { return LANGGRAPH_SOURCE_DIR; }
inline std::filesystem::path fixture(std::string_view name) { return source_dir() / "data" / "fixtures" / name; }

/// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("langgraph-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

    std::filesystem::path write(std::string_view name, std::string_view contents) const {
        const auto p = path_ / name;
        std::ofstream out(p, std::ios::binary);
        out << contents;
        return p;
    }

private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Runs `fn` and returns the kind of the langgraph::Error it throws.
template <typename Fn>
std::optional<langgraph::ErrorKind> error_kind(Fn&& fn) {
    try {
        fn();
    } catch (const langgraph::Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

/// Five languages, four patterns; the Danish (tree, wood) row has two forms.
inline langgraph::ColexTable sample_colex() {
    using langgraph::ColexRecord;
    return {
        {"language", "tongue", "rus", 163, {}}, {"eye", "look", "rus", 264, {}},
        {"tree", "wood", "rus", 228, {}},       {"knee", "kneel", "rus", 42, {}},
        {"language", "tongue", "pol", 169, {}}, {"tree", "wood", "pol", 251, {}},
        {"language", "tongue", "dan", 162, {}}, {"tree", "wood", "dan", 244, {{"træ", 91}, {"træe", 153}}},
        {"language", "tongue", "deu", 152, {}}, {"language", "tongue", "nld", 158, {}},
    };
}

/// Nodes in a regular genealogy: `families` x 2 genera x 2 branches of
/// `branch_size` languages each. Genus g of family f lies in macroarea
/// "Area<2f+g>".
inline langgraph::LanguageTable layered_nodes(std::size_t families, std::size_t branch_size) {
    langgraph::LanguageTable nodes;
    std::size_t k = 0;
    for (std::size_t f = 0; f < families; ++f) {
        for (std::size_t g = 0; g < 2; ++g) {
            for (std::size_t b = 0; b < 2; ++b) {
                for (std::size_t i = 0; i < branch_size; ++i, ++k) {
                    char id[16];
                    std::snprintf(id, sizeof id, "n%05zu", k);
                    langgraph::LanguageRecord r;
                    r.id = id;
                    r.family = "F" + std::to_string(f);
                    r.genus = r.family + "g" + std::to_string(g);
                    r.branch = r.genus + "b" + std::to_string(b);
                    r.macroarea = "Area" + std::to_string(2 * f + g);
                    nodes.push_back(std::move(r));
                }
            }
        }
    }
    return nodes;
}

/// Up to `per_level` edges of each relatedness level, drawn uniformly.
inline std::vector<langgraph::LanguageGraph::EdgeKey> sample_keys_per_level(
    const langgraph::LanguageTable& nodes, std::size_t per_level, std::uint64_t seed) {
    std::array<std::vector<langgraph::LanguageGraph::EdgeKey>, 4> by_level;
    for (std::uint32_t a = 0; a < nodes.size(); ++a) {
        for (std::uint32_t b = a + 1; b < nodes.size(); ++b) {
            by_level[static_cast<std::size_t>(langgraph::graph::relatedness_level(nodes[a], nodes[b]))].push_back({a, b});
        }
    }
    std::mt19937_64 rng(seed);
    std::vector<langgraph::LanguageGraph::EdgeKey> keys;
    for (auto& v : by_level) {
        std::shuffle(v.begin(), v.end(), rng);
        if (v.size() > per_level) v.resize(per_level);
        keys.insert(keys.end(), v.begin(), v.end());
    }
    std::sort(keys.begin(), keys.end(), [](const auto& x, const auto& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; });
    return keys;
}

/// Affine map of a bounded standardised variable into [0, 1].
inline double to_unit(double v) { return 0.5 + v / 16.0; }

/// Standardised uniform variate: mean 0, variance 1, |x| < 1.74.
inline double std_uniform(std::mt19937_64& rng) {
    return (std::uniform_real_distribution<double>(0.0, 1.0)(rng) - 0.5) * std::sqrt(12.0);
}

/// A graph whose nuclear distance follows
/// beta[level] * genetic + 0.3 * geo_dist + noise in standardised units,
/// with genetic and geo_dist independent.
inline langgraph::LanguageGraph planted_beta_graph(std::size_t per_level, const std::array<double, 4>& beta,
                                                   std::uint64_t seed) {
    using namespace langgraph;
    const std::size_t branch_size = per_level <= 2000 ? 40 : 130;
    auto nodes = layered_nodes(2, branch_size);
    auto keys = sample_keys_per_level(nodes, per_level, seed);
    std::mt19937_64 rng(seed + 1);
    std::vector<double> x(keys.size()), z(keys.size()), y(keys.size());
    constexpr double gamma = 0.3;
    for (std::size_t e = 0; e < keys.size(); ++e) {
        const auto level = static_cast<std::size_t>(graph::relatedness_level(nodes[keys[e].a], nodes[keys[e].b]));
        const double b = beta[level];
        const double xs = std_uniform(rng);
        const double zs = std_uniform(rng);
        const double noise = std::sqrt(1.0 - b * b - gamma * gamma) * std_uniform(rng);
        x[e] = to_unit(xs);
        z[e] = to_unit(zs);
        y[e] = to_unit(b * xs + gamma * zs + noise);
    }
    std::map<Attribute, std::vector<double>> columns{
        {Attribute::Genetic, x}, {Attribute::GeoDist, z}, {Attribute::Nuclear, y}};
    return LanguageGraph::from_columns(std::move(nodes), std::move(keys), std::move(columns), {});
}

}  // namespace testing
