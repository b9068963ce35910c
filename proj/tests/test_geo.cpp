#include "support.hpp"

#include "langgraph/geo.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace langgraph;
using testing::error_kind;

namespace {

LanguageRecord at(std::string id, std::optional<double> lat, std::optional<double> lon) {
    LanguageRecord r;
    r.id = std::move(id);
    r.latitude = lat;
    r.longitude = lon;
    return r;
}

// Spherical law of cosines, an independent formula for the same sphere.
double cosine_law_km(GeoPoint a, GeoPoint b) {
    const double k = std::numbers::pi / 180.0;
    const double c = std::sin(a.latitude * k) * std::sin(b.latitude * k) +
                     std::cos(a.latitude * k) * std::cos(b.latitude * k) * std::cos((b.longitude - a.longitude) * k);
    return geo::kEarthRadiusKm * std::acos(std::clamp(c, -1.0, 1.0));
}

std::vector<GeoPoint> random_points(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> lat(-60.0, 70.0), lon(-180.0, 180.0);
    std::vector<GeoPoint> p(n);
    for (auto& x : p) x = {lat(rng), lon(rng)};
    return p;
}

std::uint32_t brute_count(const std::vector<GeoPoint>& p, std::size_t i, std::size_t j) {
    const double d = geo::geodesic_km(p[i], p[j]);
    std::uint32_t c = 0;
    for (std::size_t m = 0; m < p.size(); ++m) {
        if (m == i || m == j) continue;
        if (geo::geodesic_km(p[i], p[m]) < d && geo::geodesic_km(p[j], p[m]) < d) ++c;
    }
    return c;
}

}  // namespace

TEST_CASE("circumference fractions") {
    CHECK(std::abs(geo::geodesic_km({0, 0}, {0, 90}) - 10007.5) <= 0.5);
    CHECK(std::abs(geo::geodesic_km({0, 0}, {0, 180}) - 20015.1) <= 0.5);
    CHECK(geo::geodesic_km({0, 0}, {0, 90}) == doctest::Approx(std::numbers::pi / 2 * 6371.0088));
    CHECK(geo::geodesic_km({51.0, 10.0}, {51.0, 10.0}) == 0.0);
}

TEST_CASE("geodesic is symmetric and agrees with the cosine law") {
    std::mt19937_64 rng(2);
    const auto p = random_points(rng, 100);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        CHECK(geo::geodesic_km(p[i], p[i + 1]) == geo::geodesic_km(p[i + 1], p[i]));
        CHECK(geo::geodesic_km(p[i], p[i + 1]) == doctest::Approx(cosine_law_km(p[i], p[i + 1])).epsilon(1e-6));
    }
}

TEST_CASE("collinear equatorial points") {
    const LanguageTable t{at("a", 0, 0), at("b", 0, 1), at("c", 0, 2)};
    CHECK(geo::contact_count(t, "a", "c") == 1);
    CHECK(geo::contact_count(t, "a", "b") == 0);
    CHECK(geo::contact_count(t, "b", "c") == 0);
    CHECK(geo::contact_count({at("a", 0, 0), at("b", 5, 5)}, "a", "b") == 0);
}

TEST_CASE("languages without coordinates") {
    const LanguageTable t{at("a", 0, 0), at("b", 0, 1), at("c", 0, 2), at("x", std::nullopt, std::nullopt)};
    CHECK(geo::contact_count(t, "a", "c") == 1);
    CHECK(error_kind([&] { geo::contact_count(t, "a", "x"); }) == ErrorKind::MissingCoordinates);
    CHECK(error_kind([&] { geo::contact_count(t, "a", "q"); }) == ErrorKind::UnknownLanguageId);
    const auto tables = geo::geo_tables(t);
    CHECK(tables.excluded == std::vector<std::string>{"x"});
    CHECK(tables.km.size() == 3);
    CHECK(tables.contact.find("a", "c") == 1.0);
}

TEST_CASE("neighbour flag threshold") {
    CHECK(geo::neighbour_flag(9) == 1);
    CHECK(geo::neighbour_flag(10) == 0);
    CHECK(geo::neighbour_flag(0) == 1);
    CHECK(geo::neighbour_flag(3, ContactConfig{3}) == 0);
}

TEST_CASE("rescale to the unit interval") {
    const auto t = PairValueTable::from_triples({{"a", "b", 0.0}, {"a", "c", 5.0}, {"b", "c", 10.0}});
    const auto r = geo::rescale_unit(t);
    CHECK(r.find("a", "b") == 0.0);
    CHECK(r.find("a", "c") == 0.5);
    CHECK(r.find("b", "c") == 1.0);
    const auto constant = geo::rescale_unit(PairValueTable::from_triples({{"a", "b", 3.0}, {"a", "c", 3.0}}));
    for (const auto& e : constant.entries()) CHECK(e.value == 0.0);
    const auto unit = PairValueTable::from_triples({{"a", "b", 0.0}, {"a", "c", 0.25}, {"b", "c", 1.0}});
    CHECK(geo::rescale_unit(unit).entries()[1].value == 0.25);
    CHECK(error_kind([] { geo::rescale_unit({}); }) == ErrorKind::EmptyResult);
}

TEST_CASE("pruned contact counts equal brute force") {
    std::mt19937_64 rng(99);
    for (int world = 0; world < 10; ++world) {
        const std::size_t n = 3 + rng() % 120;
        auto p = random_points(rng, n);
        // duplicates and shared latitudes exercise the boundaries
        if (n > 6) {
            p[1] = p[0];
            p[3].latitude = p[2].latitude;
        }
        const geo::PairwiseGeometry g(p);
        const auto all = g.all_contact_counts();
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j, ++k) {
                const auto expected = brute_count(p, i, j);
                REQUIRE(g.contact_count(i, j) == expected);
                REQUIRE(all[k] == expected);
            }
        }
        CHECK(all == g.all_contact_counts(4));
    }
}

TEST_CASE("farther pairs never have fewer languages in between on a line") {
    LanguageTable t;
    for (int k = 0; k < 12; ++k) t.push_back(at("p" + std::to_string(10 + k), 0.0, k * 0.5));
    for (int k = 1; k + 1 < 12; ++k) {
        CHECK(geo::contact_count(t, "p10", "p" + std::to_string(10 + k)) <=
              geo::contact_count(t, "p10", "p" + std::to_string(11 + k)));
    }
}

TEST_CASE("contact edges file") {
    testing::TempDir dir;
    const LanguageTable t{at("a", 0, 0), at("b", 0, 1), at("c", 0, 2)};
    geo::write_contact_edges(dir / "contact.tsv", geo::geo_tables(t));
    const auto text = testing::read_file(dir / "contact.tsv");
    CHECK(text.rfind("id_a\tid_b\tgeo_km\tcontact_count\tneighbour\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}
