#include "support.hpp"

#include "langgraph/concepts.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

using namespace langgraph;
using testing::error_kind;

namespace {

RatingRecord rating(std::string lemma, std::optional<double> c, std::optional<double> v = {},
                    std::optional<double> a = {}, std::optional<double> d = {}) {
    return {std::move(lemma), c, v, a, d};
}

std::vector<std::string> read_lines(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

}  // namespace

TEST_CASE("builtin sets have the published cardinalities") {
    CHECK(concepts::builtin_set("nuclear").size() == 40);
    CHECK(concepts::builtin_set("non-nuclear").size() == 60);
    CHECK(concepts::builtin_set("emotion").size() == 23);
    CHECK(concepts::builtin_set("random").size() == 60);
    CHECK(concepts::builtin_set_names() == std::vector<std::string>{"nuclear", "non-nuclear", "emotion", "random"});
}

TEST_CASE("builtin sets contain the named members") {
    const auto nuclear = concepts::builtin_set("nuclear");
    for (const char* c : {"blood", "bone", "breast", "water", "tongue", "eye", "tree", "knee"}) {
        CHECK_MESSAGE(nuclear.contains(c), c);
    }
    const auto emotion = concepts::builtin_set("emotion");
    for (const char* c : {"grief", "regret", "shame", "fear"}) CHECK_MESSAGE(emotion.contains(c), c);
    CHECK_FALSE(nuclear.contains("language"));
    CHECK_FALSE(nuclear.contains("wood"));
}

TEST_CASE("embedded lists match the data files") {
    for (const auto& name : concepts::builtin_set_names()) {
        const auto file = read_lines(testing::source_dir() / "data" / "concepts" / (name + ".txt"));
        std::vector<std::string> normalized;
        for (const auto& f : file) normalized.push_back(concepts::normalize(f));
        CHECK(concepts::builtin_set(name).members() == normalized);
    }
}

TEST_CASE("unknown builtin name") {
    CHECK(error_kind([] { concepts::builtin_set("swadesh"); }) == ErrorKind::UnknownSetName);
}

TEST_CASE("the four builtin sets are mutually exclusive") {
    std::vector<ConceptSet> sets;
    for (const auto& n : concepts::builtin_set_names()) sets.push_back(concepts::builtin_set(n));
    CHECK(concepts::assert_mutually_exclusive(sets).empty());
    CHECK(concepts::assert_mutually_exclusive({sets[0], sets[3]}).empty());
}

TEST_CASE("assert_mutually_exclusive reports overlaps") {
    const ConceptSet x("x", {"a", "b"});
    const ConceptSet y("y", {"b", "c"});
    const auto o = concepts::assert_mutually_exclusive({x, y});
    REQUIRE(o.size() == 1);
    CHECK(o[0] == concepts::Overlap{"x", "y", "b"});
    CHECK(concepts::assert_mutually_exclusive({x, x}).size() == 2);
}

TEST_CASE("ConceptSet normalises and validates members") {
    const ConceptSet s("s", {"  Tree ", "WOOD"});
    CHECK(s.members() == std::vector<std::string>{"tree", "wood"});
    CHECK(s.contains("Tree"));
    CHECK(error_kind([] { ConceptSet("s", {"tree", "TREE"}); }) == ErrorKind::MalformedRow);
    CHECK(error_kind([] { ConceptSet("s", {}); }) == ErrorKind::EmptyResult);
}

TEST_CASE("concreteness thresholds are strict") {
    const RatingTable r{rating("idea", 2.9), rating("stone", 4.0), rating("dog", 4.5), rating("x", 3.0),
                        rating("y", std::nullopt)};
    const auto abstract = concepts::filter_by_concreteness(r, concepts::Concreteness::Abstract);
    const auto concrete = concepts::filter_by_concreteness(r, concepts::Concreteness::Concrete);
    CHECK(abstract.members() == std::vector<std::string>{"idea"});
    CHECK(concrete.members() == std::vector<std::string>{"dog"});
    CHECK(error_kind([] {
              concepts::filter_by_concreteness({rating("m", 3.5)}, concepts::Concreteness::Concrete);
          }) == ErrorKind::EmptyResult);
}

TEST_CASE("affect filter applies the closed band per rating") {
    const RatingTable r{rating("a", 1, 2.0, 7.1, 3.3), rating("b", 1, 5.0, 7.1, 3.3), rating("c", 1, 3.9, 6.1, 6.5),
                        rating("d", 1, 2.0, 2.0, std::nullopt), rating("e", 1, 4.0, 7.0, 7.0),
                        rating("f", 1, 6.5, 7.0, 8.0)};
    const ConceptSet base("abstract", {"a", "b", "c", "d", "e", "f"});
    const auto per = concepts::filter_by_affect(base, r);
    CHECK(per.members() == std::vector<std::string>{"a", "c", "f"});
    const auto same = concepts::filter_by_affect(base, r, concepts::AffectRule::SameSide);
    CHECK(same.members() == std::vector<std::string>{"f"});
    CHECK(error_kind([&] { concepts::filter_by_affect(ConceptSet("x", {"b"}), r); }) == ErrorKind::EmptyResult);
}

TEST_CASE("rating-derived sets: abstract and concrete are disjoint and affect sets are subsets") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> c(1.0, 5.0), vad(1.0, 9.0);
    RatingTable r;
    for (int i = 0; i < 500; ++i) r.push_back(rating("w" + std::to_string(i), c(rng), vad(rng), vad(rng), vad(rng)));
    const auto abstract = concepts::filter_by_concreteness(r, concepts::Concreteness::Abstract);
    const auto concrete = concepts::filter_by_concreteness(r, concepts::Concreteness::Concrete);
    CHECK(concepts::assert_mutually_exclusive({abstract, concrete}).empty());
    for (const auto* base : {&abstract, &concrete}) {
        const auto aff = concepts::filter_by_affect(*base, r);
        for (const auto& m : aff.members()) CHECK(base->contains(m));
    }
}
