#include "support.hpp"

#include "langgraph/graph.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace langgraph;
using testing::error_kind;

namespace {

LanguageRecord lang(std::string id, std::string family, std::string genus, std::string branch,
                    std::string macroarea = "Eurasia") {
    LanguageRecord r;
    r.id = std::move(id);
    r.name = r.id;
    r.family = std::move(family);
    r.genus = std::move(genus);
    r.branch = std::move(branch);
    r.macroarea = std::move(macroarea);
    return r;
}

LanguageTable four_nodes() {
    return {lang("a", "F", "G", "B1"), lang("b", "F", "G", "B2"), lang("c", "F", "H", "B3"), lang("d", "K", "", "")};
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("relatedness levels") {
    using graph::relatedness_level;
    CHECK(relatedness_level(lang("a", "F", "G1", "B"), lang("b", "F", "G2", "B")) == RelatednessLevel::Lower);
    CHECK(relatedness_level(lang("a", "F", "G", "B1"), lang("b", "F", "G", "B2")) == RelatednessLevel::Mid);
    CHECK(relatedness_level(lang("a", "F", "G1", ""), lang("b", "F", "G2", "")) == RelatednessLevel::Higher);
    CHECK(relatedness_level(lang("a", "", "", ""), lang("b", "", "", "")) == RelatednessLevel::Unrelated);
    CHECK(relatedness_level(lang("a", "F", "G", "B"), lang("b", "K", "H", "C")) == RelatednessLevel::Unrelated);
    CHECK(graph::shared_label(lang("a", "F", "G", "B1"), lang("b", "F", "G", "B2")) == "G");
    CHECK(to_string(RelatednessLevel::Mid) == "mid");
    CHECK(parse_relatedness("unrelated") == RelatednessLevel::Unrelated);
}

TEST_CASE("the most specific matching level wins") {
    std::mt19937_64 rng(4);
    auto pick = [&](const char* prefix) { return rng() % 4 == 0 ? std::string{} : prefix + std::to_string(rng() % 2); };
    for (int k = 0; k < 2000; ++k) {
        const auto a = lang("a", pick("F"), pick("G"), pick("B"));
        const auto b = lang("b", pick("F"), pick("G"), pick("B"));
        RelatednessLevel expected = RelatednessLevel::Unrelated;
        if (!a.family.empty() && a.family == b.family) expected = RelatednessLevel::Higher;
        if (!a.genus.empty() && a.genus == b.genus) expected = RelatednessLevel::Mid;
        if (!a.branch.empty() && a.branch == b.branch) expected = RelatednessLevel::Lower;
        REQUIRE(graph::relatedness_level(a, b) == expected);
        REQUIRE(graph::relatedness_level(b, a) == expected);
    }
}

TEST_CASE("genetic distance from classification prefixes") {
    const std::vector<std::string> x{"F", "G", "B1"}, y{"F", "G", "B2"}, z{"K", "H"};
    CHECK(graph::genetic_distance(x, x) == 0.0);
    CHECK(graph::genetic_distance(x, z) == 1.0);
    CHECK(graph::genetic_distance(x, y) == doctest::Approx(1.0 / 3.0));
    CHECK(graph::genetic_distance(std::vector<std::string>{"F"}, x) == doctest::Approx(2.0 / 3.0));
    CHECK(error_kind([&] { graph::genetic_distance(std::vector<std::string>{}, x); }) == ErrorKind::MissingPath);

    LanguageTable t{lang("a", "", "", ""), lang("b", "", "", ""), lang("c", "", "", "")};
    t[0].classification = x;
    t[1].classification = y;
    const auto table = graph::genetic_distance_table(t);
    CHECK(table.size() == 1);
    CHECK(table.find("a", "b") == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("attribute names") {
    CHECK(attribute_name(Attribute::NonNuclear) == "non-nuclear");
    CHECK(parse_attribute("geo.dist") == Attribute::GeoDist);
    CHECK(parse_attribute("contact_dist") == Attribute::ContactDist);
    CHECK(parse_attribute("aff.abstract") == Attribute::AffAbstract);
    CHECK_FALSE(parse_attribute("colour"));
    CHECK(semantic_attribute("emotion") == Attribute::Emotion);
    CHECK_FALSE(semantic_attribute("phon"));
}

TEST_CASE("assemble merges sources into edges") {
    std::vector<AttributeSource> sources;
    sources.push_back({Attribute::Nuclear, PairValueTable::from_triples({{"a", "b", 0.2}, {"c", "a", 0.4}}), "colex"});
    sources.push_back({Attribute::GeoDist, PairValueTable::from_triples({{"a", "b", 100}, {"b", "c", 300}}), "geo"});
    sources.push_back({Attribute::ContactDist, PairValueTable::from_triples({{"a", "b", 4}, {"b", "c", 12}}), "geo"});
    const auto g = LanguageGraph::assemble(four_nodes(), sources);
    CHECK(g.nodes().size() == 4);
    CHECK(g.edge_count() == 3);
    const auto ab = g.find_edge("b", "a");
    REQUIRE(ab);
    CHECK(g.value(*ab, Attribute::Nuclear) == 0.2);
    CHECK(g.value(*ab, Attribute::GeoDist) == 0.0);
    CHECK(g.value(*ab, Attribute::Neighbour) == 1.0);
    CHECK(g.relatedness(*ab) == RelatednessLevel::Mid);
    const auto bc = g.find_edge("b", "c");
    REQUIRE(bc);
    CHECK(g.value(*bc, Attribute::GeoDist) == 1.0);
    CHECK(g.value(*bc, Attribute::ContactDist) == 1.0);
    CHECK(g.value(*bc, Attribute::Neighbour) == 0.0);
    CHECK_FALSE(g.value(*bc, Attribute::Nuclear));
    CHECK(g.edge(*bc).relatedness == RelatednessLevel::Higher);
    CHECK(g.edge(*bc).shared_label == "F");
    CHECK_FALSE(g.find_edge("a", "d"));
    CHECK_FALSE(g.has_attribute(Attribute::Phon));
    CHECK(g.column(Attribute::Phon).empty());
}

TEST_CASE("assemble rejects bad input") {
    auto nodes = four_nodes();
    CHECK(error_kind([&] {
              LanguageGraph::assemble(nodes, {{Attribute::Phon, PairValueTable::from_triples({{"a", "zz", 0.1}}), ""}});
          }) == ErrorKind::UnknownLanguageId);
    try {
        LanguageGraph::assemble(nodes, {{Attribute::Phon, PairValueTable::from_triples({{"a", "b", 0.1}}), ""},
                                        {Attribute::Phon, PairValueTable::from_triples({{"a", "b", 0.3}}), ""}});
        FAIL("expected a conflict");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ConflictingAttribute);
        CHECK(std::string(e.what()).find("phon") != std::string::npos);
    }
    CHECK(error_kind([&] {
              LanguageGraph::assemble(nodes, {{Attribute::Phon, PairValueTable::from_triples({{"a", "b", 0.1}}), ""},
                                              {Attribute::Phon, PairValueTable::from_triples({{"a", "b", 0.1}}), ""}});
          }) == std::nullopt);
    CHECK(error_kind([&] {
              LanguageGraph::assemble(nodes, {{Attribute::Neighbour, PairValueTable::from_triples({{"a", "b", 1}}), ""}});
          }) == ErrorKind::MalformedGraph);
    CHECK(error_kind([&] {
              LanguageGraph::assemble(nodes, {{Attribute::Genetic, PairValueTable::from_triples({{"a", "b", 1.5}}), ""}});
          }) == ErrorKind::ValueOutOfRange);
}

TEST_CASE("full coverage gives n choose 2 edges") {
    LanguageTable nodes;
    std::vector<std::tuple<std::string, std::string, double>> triples;
    for (int i = 0; i < 40; ++i) nodes.push_back(lang("n" + std::to_string(100 + i), "", "", ""));
    for (int i = 0; i < 40; ++i) {
        for (int j = i + 1; j < 40; ++j) triples.emplace_back(nodes[i].id, nodes[j].id, 0.5);
    }
    nodes.push_back(lang("z-isolated", "", "", ""));
    const auto g = LanguageGraph::assemble(nodes, {{Attribute::Random, PairValueTable::from_triples(triples), ""}});
    CHECK(g.edge_count() == 40 * 39 / 2);
    for (std::size_t e = 0; e < g.edge_count(); ++e) CHECK(g.id_b(e) != "z-isolated");
}

TEST_CASE("json round trip and edges tsv") {
    auto nodes = four_nodes();
    nodes[0].latitude = 51.5;
    nodes[0].longitude = -0.1;
    nodes[0].classification = {"F", "G", "B1"};
    const auto g = LanguageGraph::assemble(
        nodes, {{Attribute::Nuclear, PairValueTable::from_triples({{"a", "b", 0.1 + 0.2}, {"a", "c", 1.0 / 3.0}}), "x"},
                {Attribute::Phon, PairValueTable::from_triples({{"a", "b", 0.5}}), "y"},
                {Attribute::ContactDist, PairValueTable::from_triples({{"a", "b", 2}, {"c", "d", 20}}), ""}});
    CHECK(graph::from_json(graph::to_json(g)) == g);

    testing::TempDir dir;
    graph::export_graph(g, dir / "g.json", graph::GraphFormat::Json);
    CHECK(graph::import_graph(dir / "g.json") == g);

    const auto tsv = graph::to_edges_tsv(g);
    CHECK(count_lines(tsv) == g.edge_count() + 1);
    CHECK(tsv.rfind("id_a\tid_b\tgeo_dist\tcontact_dist\tneighbour\trelatedness\tgenetic\tphon\t", 0) == 0);
    const auto ac = tsv.find("\na\tc\t");
    REQUIRE(ac != std::string::npos);
    const auto line = tsv.substr(ac + 1, tsv.find('\n', ac + 1) - ac - 1);
    const auto cells = util::split(line, '\t');
    REQUIRE(cells.size() == 2 + kAttributeCount + 1);
    CHECK(cells[5] == "higher");
    CHECK(cells[7] == "NA");  // phon
    CHECK(util::parse_double(cells[9]) == 1.0 / 3.0);

    CHECK(error_kind([] { graph::from_json("{"); }) == ErrorKind::MalformedGraph);
    CHECK(error_kind([&] { graph::import_graph(dir / "missing.json"); }) == ErrorKind::IoFailure);
}

TEST_CASE("graph of the fixture world") {
    Diagnostics diag;
    const auto langs = ingest::load_languages(testing::fixture("world20") / "languages.tsv", &diag);
    const auto genetic = graph::genetic_distance_table(langs, 1);
    CHECK(genetic.size() == 190);
    CHECK(genetic == graph::genetic_distance_table(langs, 8));
    const auto g = LanguageGraph::assemble(langs, {{Attribute::Genetic, genetic, "tree"}});
    CHECK(g.edge_count() == 190);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (g.relatedness(e) == RelatednessLevel::Unrelated) CHECK(*g.value(e, Attribute::Genetic) > 0.0);
        else CHECK(*g.value(e, Attribute::Genetic) < 1.0);
    }
}
