#include "langgraph/graph.hpp"

#include "langgraph/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace langgraph {

namespace {

constexpr std::string_view kModule = "graph";
constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

constexpr std::array<std::string_view, kAttributeCount> kAttributeNames{
    "geo_dist", "contact_dist", "neighbour", "genetic",  "phon",     "syntactic",    "nuclear",
    "non-nuclear", "emotion", "random",    "concrete", "abstract", "aff.concrete", "aff.abstract"};

std::size_t slot(Attribute a) { return static_cast<std::size_t>(a); }

bool same_value(double x, double y) { return (std::isnan(x) && std::isnan(y)) || x == y; }

struct IndexedValue {
    std::uint32_t a;
    std::uint32_t b;
    double value;
};

bool key_less(const IndexedValue& x, const IndexedValue& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
}

}  // namespace

std::string_view to_string(RelatednessLevel level) {
    switch (level) {
        case RelatednessLevel::Lower: return "lower";
        case RelatednessLevel::Mid: return "mid";
        case RelatednessLevel::Higher: return "higher";
        case RelatednessLevel::Unrelated: return "unrelated";
    }
    return "unrelated";
}

std::optional<RelatednessLevel> parse_relatedness(std::string_view text) {
    for (auto level : kRelatednessLevels) {
        if (to_string(level) == text) return level;
    }
    return std::nullopt;
}

std::string_view attribute_name(Attribute attribute) { return kAttributeNames.at(slot(attribute)); }

std::optional<Attribute> parse_attribute(std::string_view name) {
    if (name == "geo.dist") return Attribute::GeoDist;
    if (name == "contact.dist") return Attribute::ContactDist;
    for (std::size_t i = 0; i < kAttributeCount; ++i) {
        if (kAttributeNames[i] == name) return static_cast<Attribute>(i);
    }
    return std::nullopt;
}

const std::array<Attribute, 8>& semantic_attributes() {
    static constexpr std::array<Attribute, 8> attrs{
        Attribute::Nuclear,  Attribute::NonNuclear, Attribute::Emotion,     Attribute::Random,
        Attribute::Concrete, Attribute::Abstract,   Attribute::AffConcrete, Attribute::AffAbstract};
    return attrs;
}

const std::array<Attribute, kAttributeCount>& all_attributes() {
    static const std::array<Attribute, kAttributeCount> attrs = [] {
        std::array<Attribute, kAttributeCount> out{};
        for (std::size_t i = 0; i < kAttributeCount; ++i) out[i] = static_cast<Attribute>(i);
        return out;
    }();
    return attrs;
}

std::optional<Attribute> semantic_attribute(std::string_view concept_set_name) {
    auto a = parse_attribute(concept_set_name);
    if (!a) return std::nullopt;
    const auto& sem = semantic_attributes();
    return std::find(sem.begin(), sem.end(), *a) != sem.end() ? a : std::nullopt;
}

std::optional<double> EdgeAttributes::get(Attribute attribute) const {
    switch (attribute) {
        case Attribute::GeoDist: return geo_dist;
        case Attribute::ContactDist: return contact_dist;
        case Attribute::Neighbour:
            return neighbour ? std::optional<double>(*neighbour) : std::nullopt;
        case Attribute::Genetic: return genetic;
        case Attribute::Phon: return phon;
        case Attribute::Syntactic: return syntactic;
        default: break;
    }
    return semantic.at(slot(attribute) - slot(Attribute::Nuclear));
}

// ---------------------------------------------------------------------------
// LanguageGraph

LanguageGraph LanguageGraph::assemble(LanguageTable nodes, std::vector<AttributeSource> sources,
                                      const GraphConfig& config) {
    LanguageGraph g;
    g.nodes_ = std::move(nodes);
    std::sort(g.nodes_.begin(), g.nodes_.end(),
              [](const LanguageRecord& x, const LanguageRecord& y) { return x.id < y.id; });
    for (std::size_t i = 1; i < g.nodes_.size(); ++i) {
        if (g.nodes_[i].id == g.nodes_[i - 1].id) {
            throw Error(ErrorKind::DuplicateId, kModule, "node '" + g.nodes_[i].id + "' repeated");
        }
    }

    std::array<std::vector<IndexedValue>, kAttributeCount> raw;
    std::array<bool, kAttributeCount> supplied{};
    std::set<std::string> unknown;
    for (auto& src : sources) {
        if (src.attribute == Attribute::Neighbour) {
            throw Error(ErrorKind::MalformedGraph, kModule,
                        "neighbour is derived from contact_dist and cannot be supplied");
        }
        const auto s = slot(src.attribute);
        supplied[s] = true;
        const auto& ids = src.table.ids();
        std::vector<std::optional<std::uint32_t>> map(ids.size());
        for (std::size_t k = 0; k < ids.size(); ++k) {
            map[k] = g.node_index(ids[k]);
            if (!map[k]) unknown.insert(ids[k]);
        }
        for (const auto& e : src.table.entries()) {
            if (!map[e.a] || !map[e.b]) continue;
            raw[s].push_back({*map[e.a], *map[e.b], e.value});
        }
        if (!src.provenance.empty()) {
            auto& p = g.provenance_[std::string(attribute_name(src.attribute))];
            if (!p.empty()) p += "; ";
            p += src.provenance;
        }
    }
    if (!unknown.empty()) {
        std::string msg = "distance tables reference unknown languages:";
        std::size_t shown = 0;
        for (const auto& id : unknown) {
            if (shown++ == 20) {
                msg += " ...";
                break;
            }
            msg += " " + id;
        }
        throw Error(ErrorKind::UnknownLanguageId, kModule, msg);
    }

    // Merge repeated sources per attribute; identical repeats are accepted.
    for (std::size_t s = 0; s < kAttributeCount; ++s) {
        auto& v = raw[s];
        std::stable_sort(v.begin(), v.end(), key_less);
        std::size_t out = 0;
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (out > 0 && v[out - 1].a == v[k].a && v[out - 1].b == v[k].b) {
                if (v[out - 1].value != v[k].value) {
                    throw Error(ErrorKind::ConflictingAttribute, kModule,
                                "attribute '" + std::string(kAttributeNames[s]) + "' has conflicting values for (" +
                                    g.nodes_[v[k].a].id + ", " + g.nodes_[v[k].b].id + ")");
                }
                continue;
            }
            v[out++] = v[k];
        }
        v.resize(out);
    }

    std::vector<EdgeKey> keys;
    for (const auto& v : raw) {
        for (const auto& x : v) keys.push_back({x.a, x.b});
    }
    std::sort(keys.begin(), keys.end(), [](const EdgeKey& x, const EdgeKey& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    g.keys_ = std::move(keys);

    auto fill = [&](std::size_t s, const std::vector<IndexedValue>& v, auto&& fn) {
        auto& col = g.columns_[s];
        g.present_[s] = true;
        col.assign(g.keys_.size(), kMissing);
        std::size_t e = 0;
        for (const auto& x : v) {
            while (g.keys_[e].a != x.a || g.keys_[e].b != x.b) ++e;
            col[e] = fn(x.value);
        }
    };

    for (std::size_t s = 0; s < kAttributeCount; ++s) {
        if (!supplied[s]) continue;
        const auto attr = static_cast<Attribute>(s);
        const auto& v = raw[s];
        if (attr == Attribute::GeoDist || attr == Attribute::ContactDist) {
            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            for (const auto& x : v) {
                if (!(x.value >= 0.0) || !std::isfinite(x.value)) {
                    throw Error(ErrorKind::ValueOutOfRange, kModule,
                                std::string(kAttributeNames[s]) + " must be nonnegative");
                }
                lo = std::min(lo, x.value);
                hi = std::max(hi, x.value);
            }
            const double span = hi - lo;
            fill(s, v, [&](double x) { return span > 0.0 ? std::clamp((x - lo) / span, 0.0, 1.0) : 0.0; });
            if (attr == Attribute::ContactDist) {
                fill(slot(Attribute::Neighbour), v, [&](double x) {
                    return static_cast<double>(
                        geo::neighbour_flag(static_cast<std::uint32_t>(x), config.contact));
                });
                g.provenance_["neighbour"] = "contact_dist count < " +
                                             std::to_string(config.contact.neighbour_threshold);
            }
        } else {
            for (const auto& x : v) {
                if (!kUnitRange.contains(x.value)) {
                    throw Error(ErrorKind::ValueOutOfRange, kModule,
                                std::string(kAttributeNames[s]) + " value " +
                                    util::format_double(x.value) + " outside [0, 1]");
                }
            }
            fill(s, v, [](double x) { return x; });
        }
    }
    g.finish();
    return g;
}

LanguageGraph LanguageGraph::from_columns(LanguageTable nodes, std::vector<EdgeKey> keys,
                                          std::map<Attribute, std::vector<double>> columns,
                                          std::map<std::string, std::string> provenance) {
    LanguageGraph g;
    g.nodes_ = std::move(nodes);
    for (std::size_t i = 1; i < g.nodes_.size(); ++i) {
        if (!(g.nodes_[i - 1].id < g.nodes_[i].id)) {
            throw Error(ErrorKind::MalformedGraph, kModule, "nodes must be sorted by unique id");
        }
    }
    for (std::size_t e = 0; e < keys.size(); ++e) {
        const auto& k = keys[e];
        if (k.a >= k.b || k.b >= g.nodes_.size()) {
            throw Error(ErrorKind::MalformedGraph, kModule, "invalid edge key at position " + std::to_string(e));
        }
        if (e > 0 && !(keys[e - 1].a < k.a || (keys[e - 1].a == k.a && keys[e - 1].b < k.b))) {
            throw Error(ErrorKind::MalformedGraph, kModule, "edges must be sorted and unique");
        }
    }
    g.keys_ = std::move(keys);
    for (auto& [attr, values] : columns) {
        if (values.size() != g.keys_.size()) {
            throw Error(ErrorKind::MalformedGraph, kModule,
                        "column '" + std::string(attribute_name(attr)) + "' has wrong length");
        }
        for (double v : values) {
            if (!std::isnan(v) && !kUnitRange.contains(v)) {
                throw Error(ErrorKind::ValueOutOfRange, kModule,
                            std::string(attribute_name(attr)) + " value outside [0, 1]");
            }
            if (attr == Attribute::Neighbour && !std::isnan(v) && v != 0.0 && v != 1.0) {
                throw Error(ErrorKind::MalformedGraph, kModule, "neighbour must be 0 or 1");
            }
        }
        g.columns_[slot(attr)] = std::move(values);
        g.present_[slot(attr)] = true;
    }
    g.provenance_ = std::move(provenance);
    g.finish();
    return g;
}

void LanguageGraph::finish() {
    relatedness_.resize(keys_.size());
    for (std::size_t e = 0; e < keys_.size(); ++e) {
        relatedness_[e] = graph::relatedness_level(nodes_[keys_[e].a], nodes_[keys_[e].b]);
    }
}

std::optional<std::uint32_t> LanguageGraph::node_index(std::string_view id) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                               [](const LanguageRecord& r, std::string_view v) { return r.id < v; });
    if (it == nodes_.end() || it->id != id) return std::nullopt;
    return static_cast<std::uint32_t>(it - nodes_.begin());
}

std::optional<std::size_t> LanguageGraph::find_edge(std::string_view a, std::string_view b) const {
    auto ia = node_index(a);
    auto ib = node_index(b);
    if (!ia || !ib || *ia == *ib) return std::nullopt;
    const EdgeKey k{std::min(*ia, *ib), std::max(*ia, *ib)};
    auto it = std::lower_bound(keys_.begin(), keys_.end(), k, [](const EdgeKey& x, const EdgeKey& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    if (it == keys_.end() || !(*it == k)) return std::nullopt;
    return static_cast<std::size_t>(it - keys_.begin());
}

bool LanguageGraph::has_attribute(Attribute attribute) const {
    return present_[slot(attribute)];
}

std::span<const double> LanguageGraph::column(Attribute attribute) const {
    return columns_[slot(attribute)];
}

std::optional<double> LanguageGraph::value(std::size_t edge, Attribute attribute) const {
    const auto& col = columns_[slot(attribute)];
    if (!present_[slot(attribute)]) return std::nullopt;
    const double v = col.at(edge);
    if (std::isnan(v)) return std::nullopt;
    return v;
}

EdgeAttributes LanguageGraph::edge(std::size_t e) const {
    EdgeAttributes out;
    out.geo_dist = value(e, Attribute::GeoDist);
    out.contact_dist = value(e, Attribute::ContactDist);
    if (auto n = value(e, Attribute::Neighbour)) out.neighbour = static_cast<int>(*n);
    out.relatedness = relatedness_.at(e);
    out.shared_label = graph::shared_label(nodes_[keys_[e].a], nodes_[keys_[e].b]);
    out.genetic = value(e, Attribute::Genetic);
    out.phon = value(e, Attribute::Phon);
    out.syntactic = value(e, Attribute::Syntactic);
    const auto& sem = semantic_attributes();
    for (std::size_t k = 0; k < sem.size(); ++k) out.semantic[k] = value(e, sem[k]);
    return out;
}

bool LanguageGraph::operator==(const LanguageGraph& other) const {
    if (nodes_ != other.nodes_ || keys_ != other.keys_ || provenance_ != other.provenance_ ||
        present_ != other.present_) {
        return false;
    }
    for (std::size_t s = 0; s < kAttributeCount; ++s) {
        const auto& x = columns_[s];
        const auto& y = other.columns_[s];
        if (x.size() != y.size()) return false;
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (!same_value(x[k], y[k])) return false;
        }
    }
    return relatedness_ == other.relatedness_;
}

namespace graph {

RelatednessLevel relatedness_level(const LanguageRecord& a, const LanguageRecord& b) {
    if (!a.branch.empty() && a.branch == b.branch) return RelatednessLevel::Lower;
    if (!a.genus.empty() && a.genus == b.genus) return RelatednessLevel::Mid;
    if (!a.family.empty() && a.family == b.family) return RelatednessLevel::Higher;
    return RelatednessLevel::Unrelated;
}

std::string shared_label(const LanguageRecord& a, const LanguageRecord& b) {
    switch (relatedness_level(a, b)) {
        case RelatednessLevel::Lower: return a.branch;
        case RelatednessLevel::Mid: return a.genus;
        case RelatednessLevel::Higher: return a.family;
        case RelatednessLevel::Unrelated: return {};
    }
    return {};
}

double genetic_distance(std::span<const std::string> path_a, std::span<const std::string> path_b) {
    if (path_a.empty() || path_b.empty()) {
        throw Error(ErrorKind::MissingPath, kModule, "classification path is empty");
    }
    std::size_t common = 0;
    while (common < path_a.size() && common < path_b.size() && path_a[common] == path_b[common]) {
        ++common;
    }
    const auto longest = std::max(path_a.size(), path_b.size());
    return 1.0 - static_cast<double>(common) / static_cast<double>(longest);
}

double genetic_distance(const LanguageRecord& a, const LanguageRecord& b) {
    if (a.classification.empty() || b.classification.empty()) {
        throw Error(ErrorKind::MissingPath, kModule,
                    "no classification path for '" + (a.classification.empty() ? a.id : b.id) + "'");
    }
    return genetic_distance(a.classification, b.classification);
}

PairValueTable genetic_distance_table(const LanguageTable& languages, unsigned threads) {
    std::vector<const LanguageRecord*> with_path;
    for (const auto& r : languages) {
        if (!r.classification.empty()) with_path.push_back(&r);
    }
    std::sort(with_path.begin(), with_path.end(),
              [](const LanguageRecord* x, const LanguageRecord* y) { return x->id < y->id; });
    const std::size_t n = with_path.size();
    std::vector<std::string> ids;
    ids.reserve(n);
    for (const auto* r : with_path) ids.push_back(r->id);
    std::vector<std::size_t> offset(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) offset[i + 1] = offset[i] + (n - 1 - i);
    std::vector<PairValueTable::Entry> entries(offset[n]);
    util::parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            std::size_t k = offset[i];
            for (std::size_t j = i + 1; j < n; ++j) {
                entries[k++] = {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                                genetic_distance(with_path[i]->classification,
                                                 with_path[j]->classification)};
            }
        }
    });
    return PairValueTable(std::move(ids), std::move(entries), kUnitRange);
}

// ---------------------------------------------------------------------------
// Serialisation

std::string to_edges_tsv(const LanguageGraph& g) {
    std::string out = "id_a\tid_b";
    for (auto attr : all_attributes()) {
        out += '\t';
        out += attribute_name(attr);
        if (attr == Attribute::Neighbour) out += "\trelatedness";
    }
    out += '\n';
    std::array<std::span<const double>, kAttributeCount> cols;
    for (auto attr : all_attributes()) cols[slot(attr)] = g.column(attr);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        out += g.id_a(e);
        out += '\t';
        out += g.id_b(e);
        for (auto attr : all_attributes()) {
            out += '\t';
            const auto& col = cols[slot(attr)];
            if (!g.has_attribute(attr) || std::isnan(col[e])) {
                out += "NA";
            } else if (attr == Attribute::Neighbour) {
                out += col[e] != 0.0 ? '1' : '0';
            } else {
                out += util::format_double(col[e]);
            }
            if (attr == Attribute::Neighbour) {
                out += '\t';
                out += to_string(g.relatedness(e));
            }
        }
        out += '\n';
    }
    return out;
}

namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional_number(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

}  // namespace

std::string to_json(const LanguageGraph& g) {
    json doc;
    doc["format"] = "langgraph";
    doc["version"] = 1;
    json nodes = json::array();
    for (const auto& r : g.nodes()) {
        nodes.push_back({{"id", r.id},
                         {"name", r.name},
                         {"family", r.family},
                         {"genus", r.genus},
                         {"parent", r.parent},
                         {"branch", r.branch},
                         {"macroarea", r.macroarea},
                         {"area", r.area},
                         {"latitude", optional_number(r.latitude)},
                         {"longitude", optional_number(r.longitude)},
                         {"classification", r.classification}});
    }
    doc["nodes"] = std::move(nodes);
    doc["provenance"] = g.provenance();

    json edges;
    json id_a = json::array();
    json id_b = json::array();
    json rel = json::array();
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        id_a.push_back(g.id_a(e));
        id_b.push_back(g.id_b(e));
        rel.push_back(to_string(g.relatedness(e)));
    }
    edges["id_a"] = std::move(id_a);
    edges["id_b"] = std::move(id_b);
    edges["relatedness"] = std::move(rel);
    json attrs;
    for (auto attr : all_attributes()) {
        if (!g.has_attribute(attr)) continue;
        json col = json::array();
        for (double v : g.column(attr)) {
            if (std::isnan(v)) {
                col.push_back(nullptr);
            } else {
                col.push_back(v);
            }
        }
        attrs[std::string(attribute_name(attr))] = std::move(col);
    }
    edges["attributes"] = attrs.is_null() ? json::object() : std::move(attrs);
    doc["edges"] = std::move(edges);
    return doc.dump(1) + "\n";
}

LanguageGraph from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& ex) {
        throw Error(ErrorKind::MalformedGraph, kModule, std::string("invalid JSON: ") + ex.what());
    }
    try {
        if (doc.value("format", "") != "langgraph") {
            throw Error(ErrorKind::MalformedGraph, kModule, "not a langgraph document");
        }
        LanguageTable nodes;
        for (const auto& n : doc.at("nodes")) {
            LanguageRecord r;
            r.id = n.at("id").get<std::string>();
            r.name = n.value("name", "");
            r.family = n.value("family", "");
            r.genus = n.value("genus", "");
            r.parent = n.value("parent", "");
            r.branch = n.value("branch", "");
            r.macroarea = n.value("macroarea", "");
            r.area = n.value("area", "");
            r.latitude = read_optional_number(n.value("latitude", json(nullptr)));
            r.longitude = read_optional_number(n.value("longitude", json(nullptr)));
            r.classification = n.value("classification", std::vector<std::string>{});
            nodes.push_back(std::move(r));
        }
        std::vector<std::string> node_ids;
        for (const auto& r : nodes) node_ids.push_back(r.id);
        auto index_of = [&](const std::string& id) -> std::uint32_t {
            auto it = std::lower_bound(node_ids.begin(), node_ids.end(), id);
            if (it == node_ids.end() || *it != id) {
                throw Error(ErrorKind::UnknownLanguageId, kModule, "edge references unknown node '" + id + "'");
            }
            return static_cast<std::uint32_t>(it - node_ids.begin());
        };
        const auto& edges = doc.at("edges");
        const auto& ja = edges.at("id_a");
        const auto& jb = edges.at("id_b");
        if (ja.size() != jb.size()) throw Error(ErrorKind::MalformedGraph, kModule, "id columns differ in length");
        if (!std::is_sorted(node_ids.begin(), node_ids.end())) {
            throw Error(ErrorKind::MalformedGraph, kModule, "nodes must be sorted by id");
        }
        std::vector<LanguageGraph::EdgeKey> keys;
        keys.reserve(ja.size());
        for (std::size_t e = 0; e < ja.size(); ++e) {
            keys.push_back({index_of(ja[e].get<std::string>()), index_of(jb[e].get<std::string>())});
        }
        std::map<Attribute, std::vector<double>> columns;
        for (const auto& [name, col] : edges.at("attributes").items()) {
            auto attr = parse_attribute(name);
            if (!attr) throw Error(ErrorKind::UnknownAttribute, kModule, "unknown attribute '" + name + "'");
            std::vector<double> values;
            values.reserve(col.size());
            for (const auto& v : col) {
                values.push_back(v.is_null() ? kMissing : v.get<double>());
            }
            columns.emplace(*attr, std::move(values));
        }
        auto provenance = doc.value("provenance", std::map<std::string, std::string>{});
        auto g = LanguageGraph::from_columns(std::move(nodes), std::move(keys), std::move(columns),
                                             std::move(provenance));
        if (edges.contains("relatedness")) {
            const auto& rel = edges.at("relatedness");
            for (std::size_t e = 0; e < g.edge_count() && e < rel.size(); ++e) {
                if (rel[e].get<std::string>() != to_string(g.relatedness(e))) {
                    throw Error(ErrorKind::MalformedGraph, kModule,
                                "stored relatedness disagrees with node genealogy at edge " + std::to_string(e));
                }
            }
        }
        return g;
    } catch (const json::exception& ex) {
        throw Error(ErrorKind::MalformedGraph, kModule, std::string("invalid graph document: ") + ex.what());
    }
}

void export_graph(const LanguageGraph& g, const std::filesystem::path& path, GraphFormat format) {
    util::write_text_file(path, format == GraphFormat::Json ? to_json(g) : to_edges_tsv(g), kModule);
}

LanguageGraph import_graph(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoFailure, kModule, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

}  // namespace graph
}  // namespace langgraph
