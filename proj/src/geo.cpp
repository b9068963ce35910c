#include "langgraph/geo.hpp"

#include "langgraph/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

namespace langgraph::geo {

namespace {

constexpr std::string_view kModule = "geo";
constexpr double kDegToRad = std::numbers::pi / 180.0;
// Slack on the latitude prefilter, in degrees (~1 cm).
constexpr double kBandSlackDeg = 1e-7;

GeoPoint point_of(const LanguageRecord& r) { return GeoPoint{*r.latitude, *r.longitude}; }

}  // namespace

double geodesic_km(GeoPoint a, GeoPoint b) {
    if (std::tie(b.latitude, b.longitude) < std::tie(a.latitude, a.longitude)) std::swap(a, b);
    const double phi1 = a.latitude * kDegToRad;
    const double phi2 = b.latitude * kDegToRad;
    const double dphi = phi2 - phi1;
    const double dlambda = (b.longitude - a.longitude) * kDegToRad;
    const double s1 = std::sin(dphi / 2.0);
    const double s2 = std::sin(dlambda / 2.0);
    const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
    return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

std::uint32_t contact_count(const LanguageTable& languages, std::string_view a, std::string_view b) {
    const auto* la = ingest::find_language(languages, a);
    const auto* lb = ingest::find_language(languages, b);
    if (!la || !lb) {
        throw Error(ErrorKind::UnknownLanguageId, kModule,
                    "unknown language '" + std::string(!la ? a : b) + "'");
    }
    if (la->id == lb->id) throw Error(ErrorKind::MalformedRow, kModule, "contact count of a language with itself");
    if (!la->has_coordinates() || !lb->has_coordinates()) {
        throw Error(ErrorKind::MissingCoordinates, kModule,
                    "'" + (la->has_coordinates() ? lb->id : la->id) + "' has no coordinates");
    }
    const auto pa = point_of(*la);
    const auto pb = point_of(*lb);
    const double d = geodesic_km(pa, pb);
    std::uint32_t count = 0;
    for (const auto& m : languages) {
        if (&m == la || &m == lb || !m.has_coordinates()) continue;
        const auto pm = point_of(m);
        if (geodesic_km(pa, pm) < d && geodesic_km(pb, pm) < d) ++count;
    }
    return count;
}

int neighbour_flag(std::uint32_t count, const ContactConfig& config) {
    return count < config.neighbour_threshold ? 1 : 0;
}

PairValueTable rescale_unit(const PairValueTable& table) {
    if (table.empty()) throw Error(ErrorKind::EmptyResult, kModule, "cannot rescale an empty table");
    double lo = table.entries().front().value;
    double hi = lo;
    for (const auto& e : table.entries()) {
        lo = std::min(lo, e.value);
        hi = std::max(hi, e.value);
    }
    const double span = hi - lo;
    return table.transformed(
        [&](double v) { return span > 0.0 ? std::clamp((v - lo) / span, 0.0, 1.0) : 0.0; },
        kUnitRange);
}

PairwiseGeometry::PairwiseGeometry(std::vector<GeoPoint> points, unsigned threads)
    : points_(std::move(points)) {
    const std::size_t n = points_.size();
    km_.assign(n * n, 0.0);
    util::parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) km_[i * n + j] = geodesic_km(points_[i], points_[j]);
        }
    });
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) km_[i * n + j] = km_[j * n + i];
    }
    by_latitude_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) by_latitude_[i] = i;
    std::stable_sort(by_latitude_.begin(), by_latitude_.end(), [&](std::uint32_t a, std::uint32_t b) {
        return points_[a].latitude < points_[b].latitude;
    });
    sorted_latitudes_.reserve(n);
    for (auto i : by_latitude_) sorted_latitudes_.push_back(points_[i].latitude);
}

std::uint32_t PairwiseGeometry::contact_count(std::size_t i, std::size_t j) const {
    const std::size_t n = points_.size();
    const double d = km_[i * n + j];
    // d(a, M) >= R * |lat_a - lat_M|, so any M in between lies in both
    // latitude bands.
    const double band = d / kEarthRadiusKm / kDegToRad + kBandSlackDeg;
    const double lo = std::max(points_[i].latitude, points_[j].latitude) - band;
    const double hi = std::min(points_[i].latitude, points_[j].latitude) + band;
    if (lo > hi) return 0;
    auto first = std::lower_bound(sorted_latitudes_.begin(), sorted_latitudes_.end(), lo);
    auto last = std::upper_bound(first, sorted_latitudes_.end(), hi);
    const double* row_i = km_.data() + i * n;
    const double* row_j = km_.data() + j * n;
    std::uint32_t count = 0;
    for (auto it = first; it != last; ++it) {
        const auto m = by_latitude_[static_cast<std::size_t>(it - sorted_latitudes_.begin())];
        if (m == i || m == j) continue;
        if (row_i[m] < d && row_j[m] < d) ++count;
    }
    return count;
}

std::vector<std::uint32_t> PairwiseGeometry::all_contact_counts(unsigned threads) const {
    const std::size_t n = points_.size();
    std::vector<std::size_t> offset(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) offset[i + 1] = offset[i] + (n - 1 - i);
    std::vector<std::uint32_t> out(offset[n]);
    util::parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            std::size_t k = offset[i];
            for (std::size_t j = i + 1; j < n; ++j) out[k++] = contact_count(i, j);
        }
    });
    return out;
}

GeoTables geo_tables(const LanguageTable& languages, unsigned threads) {
    GeoTables out;
    std::vector<const LanguageRecord*> located;
    for (const auto& r : languages) {
        if (r.has_coordinates()) {
            located.push_back(&r);
        } else {
            out.excluded.push_back(r.id);
        }
    }
    std::sort(located.begin(), located.end(),
              [](const LanguageRecord* a, const LanguageRecord* b) { return a->id < b->id; });
    std::sort(out.excluded.begin(), out.excluded.end());
    std::vector<GeoPoint> points;
    std::vector<std::string> ids;
    for (const auto* r : located) {
        points.push_back(point_of(*r));
        ids.push_back(r->id);
    }
    const PairwiseGeometry geometry(points, threads);
    const auto counts = geometry.all_contact_counts(threads);
    const std::size_t n = points.size();
    std::vector<PairValueTable::Entry> km;
    std::vector<PairValueTable::Entry> contact;
    km.reserve(counts.size());
    contact.reserve(counts.size());
    std::size_t k = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j, ++k) {
            km.push_back({i, j, geometry.km(i, j)});
            contact.push_back({i, j, static_cast<double>(counts[k])});
        }
    }
    out.km = PairValueTable(ids, std::move(km));
    out.contact = PairValueTable(std::move(ids), std::move(contact));
    return out;
}

void write_contact_edges(const std::filesystem::path& path, const GeoTables& tables,
                         const ContactConfig& config) {
    std::string out = "id_a\tid_b\tgeo_km\tcontact_count\tneighbour\n";
    for (const auto& e : tables.km.entries()) {
        const auto& a = tables.km.id(e.a);
        const auto& b = tables.km.id(e.b);
        const auto count = tables.contact.find(a, b);
        out += a;
        out += '\t';
        out += b;
        out += '\t';
        out += util::format_double(e.value);
        out += '\t';
        if (count) {
            const auto c = static_cast<std::uint32_t>(*count);
            out += std::to_string(c);
            out += '\t';
            out += std::to_string(neighbour_flag(c, config));
        } else {
            out += "NA\tNA";
        }
        out += '\n';
    }
    util::write_text_file(path, out, kModule);
}

}  // namespace langgraph::geo
