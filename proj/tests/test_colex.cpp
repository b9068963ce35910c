#include "support.hpp"

#include "langgraph/colex.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace langgraph;
using testing::error_kind;

namespace {

const PatternList kSamplePatterns{
    {"language", "tongue"}, {"eye", "look"}, {"tree", "wood"}, {"knee", "kneel"}};
const std::vector<std::string> kSampleLanguages{"rus", "pol", "dan", "deu", "nld"};

// Independent oracle: plain dense cosine distance.
double dense_cosine(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    long double dot = 0, na = 0, nb = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        dot += static_cast<long double>(a[k]) * b[k];
        na += static_cast<long double>(a[k]) * a[k];
        nb += static_cast<long double>(b[k]) * b[k];
    }
    return static_cast<double>(1.0L - dot / std::sqrt(na * nb));
}

ColexTable random_table(std::mt19937_64& rng, std::size_t n, std::size_t m, double density) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<std::uint64_t> f(1, 500);
    ColexTable t;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (u(rng) < density) {
                t.push_back({"c" + std::to_string(1000 + j), "d" + std::to_string(1000 + j),
                             "l" + std::to_string(100 + i), f(rng), {}});
            }
        }
    }
    return t;
}

// Patterns attested somewhere in `t`, sorted.
PatternList attested_patterns(const ColexTable& t) {
    PatternList p;
    for (const auto& r : t) p.push_back({r.concept_a, r.concept_b});
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    return p;
}

std::vector<std::string> all_languages(std::size_t n) {
    std::vector<std::string> l;
    for (std::size_t i = 0; i < n; ++i) l.push_back("l" + std::to_string(100 + i));
    return l;
}

}  // namespace

TEST_CASE("five-language sample rows") {
    const auto m = colex::build_matrix(testing::sample_colex(), kSamplePatterns, kSampleLanguages);
    REQUIRE(m.rows() == 5);
    REQUIRE(m.columns() == 4);
    CHECK(m.dense_row(0) == std::vector<std::uint64_t>{163, 264, 228, 42});
    CHECK(m.dense_row(1) == std::vector<std::uint64_t>{169, 0, 251, 0});
    CHECK(m.dense_row(2) == std::vector<std::uint64_t>{162, 0, 244, 0});
    CHECK(m.dense_row(3) == std::vector<std::uint64_t>{152, 0, 0, 0});
    CHECK(m.at(4, 0) == 158);
}

TEST_CASE("Russian-Polish distance") {
    const auto m = colex::build_matrix(testing::sample_colex(), kSamplePatterns, kSampleLanguages);
    // dot 84775, norms 150013 and 91562
    const double expected = 1.0 - 84775.0 / std::sqrt(150013.0 * 91562.0);
    CHECK(colex::semantic_distance(m, "rus", "pol") == doctest::Approx(expected).epsilon(1e-14));
    CHECK(std::abs(colex::semantic_distance(m, "rus", "pol") - 0.2766) < 1e-4);
    CHECK(colex::semantic_distance(m, "pol", "rus") == colex::semantic_distance(m, "rus", "pol"));
    CHECK(colex::semantic_distance(m, "rus", "rus") == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(colex::semantic_distance(m, "deu", "nld") == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("disjoint support gives distance 1") {
    const ColexTable t{{"a", "b", "x", 3, {}}, {"c", "d", "y", 4, {}}};
    const auto m = colex::build_matrix(t, {{"a", "b"}, {"c", "d"}}, {"x", "y"});
    CHECK(colex::semantic_distance(m, "x", "y") == 1.0);
}

TEST_CASE("nuclear selection over the sample") {
    const auto nuclear = concepts::builtin_set("nuclear");
    const auto p = colex::select_patterns(testing::sample_colex(), nuclear, colex::SelectionMode::Any);
    REQUIRE(p.size() == 4);
    CHECK(std::find(p.begin(), p.end(), ConceptPair{"language", "tongue"}) != p.end());
    CHECK(std::is_sorted(p.begin(), p.end()));
}

TEST_CASE("both-mode selection keeps pairs inside the set") {
    const ConceptSet s("s", {"tree", "wood", "eye"});
    const auto p = colex::select_patterns(testing::sample_colex(), s, colex::SelectionMode::Both, 1);
    CHECK(p == PatternList{{"tree", "wood"}});
    CHECK(colex::default_min_languages(colex::SelectionMode::Both) == 3);
    CHECK(colex::default_min_languages(colex::SelectionMode::Any) == 1);
}

TEST_CASE("min_languages threshold") {
    const ColexTable t{{"eye", "look", "rus", 3, {}}, {"eye", "look", "pol", 3, {}},
                       {"tree", "wood", "rus", 1, {}}, {"tree", "wood", "pol", 1, {}},
                       {"tree", "wood", "dan", 1, {}}, {"knee", "kneel", "dan", 0, {}}};
    const ConceptSet s("s", {"eye", "tree", "knee"});
    CHECK(colex::select_patterns(t, s, colex::SelectionMode::Any, 3) == PatternList{{"tree", "wood"}});
    CHECK(colex::select_patterns(t, s, colex::SelectionMode::Any, 2).size() == 2);
    CHECK(error_kind([&] { colex::select_patterns(t, s, colex::SelectionMode::Any, 4); }) ==
          ErrorKind::EmptyPatternList);
    CHECK(error_kind([&] { colex::select_patterns({}, s, colex::SelectionMode::Any); }) ==
          ErrorKind::EmptyPatternList);
}

TEST_CASE("unattested language keeps an all-zero row") {
    auto langs = kSampleLanguages;
    langs.push_back("eng");
    const auto m = colex::build_matrix(testing::sample_colex(), kSamplePatterns, langs);
    const auto i = m.language_index("eng");
    REQUIRE(i);
    CHECK(m.zero_row(*i));
    CHECK(m.dense_row(*i) == std::vector<std::uint64_t>(4, 0));
    CHECK(colex::zero_rows(m) == std::vector<std::string>{"eng"});
    CHECK(error_kind([&] { colex::semantic_distance(m, "eng", "rus"); }) == ErrorKind::ZeroVector);
}

TEST_CASE("records for unlisted languages are rejected") {
    CHECK(error_kind([] { colex::build_matrix(testing::sample_colex(), kSamplePatterns, {"rus", "pol"}); }) ==
          ErrorKind::UnknownLanguageId);
}

TEST_CASE("pair-count law on the distance table") {
    const auto m = colex::build_matrix(testing::sample_colex(), kSamplePatterns, kSampleLanguages);
    CHECK(colex::semantic_distance_table(m).size() == 10);

    ColexTable t = testing::sample_colex();
    const auto with_zero = colex::build_matrix(t, {{"eye", "look"}, {"tree", "wood"}, {"knee", "kneel"}},
                                               {"rus", "pol", "dan", "deu", "nld"});
    // deu and nld only attest (language, tongue), so both are zero here
    CHECK(colex::zero_rows(with_zero).size() == 2);
    CHECK(colex::semantic_distance_table(with_zero).size() == 3);

    t.erase(std::remove_if(t.begin(), t.end(), [](const ColexRecord& r) { return r.language == "nld"; }), t.end());
    const auto one_zero = colex::build_matrix(t, kSamplePatterns, {"rus", "pol", "dan", "deu", "nld"});
    CHECK(colex::semantic_distance_table(one_zero).size() == 6);
}

TEST_CASE("sparse distances match a dense oracle") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + rng() % 19;
        const std::size_t m = 1 + rng() % 50;
        const auto t = random_table(rng, n, m, 0.3);
        if (t.empty()) continue;
        const auto matrix = colex::build_matrix(t, attested_patterns(t), all_languages(n));
        const auto table = colex::semantic_distance_table(matrix);
        std::size_t expected_pairs = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const auto a = matrix.dense_row(i);
                const auto b = matrix.dense_row(j);
                if (matrix.zero_row(i) || matrix.zero_row(j)) {
                    CHECK_FALSE(table.find(matrix.languages()[i], matrix.languages()[j]));
                    continue;
                }
                ++expected_pairs;
                const auto got = table.find(matrix.languages()[i], matrix.languages()[j]);
                REQUIRE(got);
                CHECK(std::abs(*got - dense_cosine(a, b)) <= 1e-12);
                CHECK(*got >= 0.0);
                CHECK(*got <= 1.0);
            }
        }
        CHECK(table.size() == expected_pairs);
    }
}

TEST_CASE("distance is invariant under row scaling") {
    ColexTable t = testing::sample_colex();
    for (auto& r : t) {
        if (r.language == "rus") {
            r.frequency *= 7;
            r.forms.clear();
        }
    }
    const auto a = colex::build_matrix(testing::sample_colex(), kSamplePatterns, kSampleLanguages);
    const auto b = colex::build_matrix(t, kSamplePatterns, kSampleLanguages);
    CHECK(colex::semantic_distance(a, "rus", "pol") ==
          doctest::Approx(colex::semantic_distance(b, "rus", "pol")).epsilon(1e-12));
}

TEST_CASE("distance table does not depend on the thread count") {
    std::mt19937_64 rng(3);
    const auto t = random_table(rng, 60, 40, 0.2);
    const auto m = colex::build_matrix(t, attested_patterns(t), all_languages(60));
    const auto one = colex::semantic_distance_table(m, 1);
    CHECK(one == colex::semantic_distance_table(m, 4));
    CHECK(one == colex::semantic_distance_table(m, 8));
}
