#pragma once

#include "langgraph/ingest.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace langgraph {

struct GeoPoint {
    double latitude = 0.0;   // degrees
    double longitude = 0.0;  // degrees

    bool operator==(const GeoPoint&) const = default;
};

struct ContactConfig {
    /// A pair is neighbouring when fewer than this many languages lie in
    /// between.
    std::uint32_t neighbour_threshold = 10;
};

namespace geo {

inline constexpr double kEarthRadiusKm = 6371.0088;

/// Haversine great-circle distance. Exactly symmetric.
double geodesic_km(GeoPoint a, GeoPoint b);

/// Number of third languages M with d(a, M) < d(a, b) and d(b, M) < d(a, b).
/// Languages without coordinates are ignored as candidates.
std::uint32_t contact_count(const LanguageTable& languages, std::string_view a, std::string_view b);

int neighbour_flag(std::uint32_t count, const ContactConfig& config = {});

/// Min-max rescaling to [0, 1]; a constant table maps to all zeros.
PairValueTable rescale_unit(const PairValueTable& table);

/// All-pairs geodesic distances and contact counts for a point set.
/// Pairs are enumerated as (i, j), i < j, in row-major order.
class PairwiseGeometry {
public:
    PairwiseGeometry(std::vector<GeoPoint> points, unsigned threads = 1);

    std::size_t size() const noexcept { return points_.size(); }
    double km(std::size_t i, std::size_t j) const { return km_[i * points_.size() + j]; }
    /// Latitude-band pruned count; equals the brute-force rule exactly.
    std::uint32_t contact_count(std::size_t i, std::size_t j) const;
    /// Counts for every pair in row-major upper-triangle order.
    std::vector<std::uint32_t> all_contact_counts(unsigned threads = 1) const;

private:
    std::vector<GeoPoint> points_;
    std::vector<double> km_;
    std::vector<std::uint32_t> by_latitude_;
    std::vector<double> sorted_latitudes_;
};

struct GeoTables {
    PairValueTable km;              // raw kilometres
    PairValueTable contact;         // raw in-between counts
    std::vector<std::string> excluded;  // ids lacking coordinates
};

GeoTables geo_tables(const LanguageTable& languages, unsigned threads = 1);

/// Edge list `id_a, id_b, geo_km, contact_count, neighbour` over the pairs
/// of `tables`.
void write_contact_edges(const std::filesystem::path& path, const GeoTables& tables,
                         const ContactConfig& config = {});

}  // namespace geo
}  // namespace langgraph
