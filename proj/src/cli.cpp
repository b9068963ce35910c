#include "langgraph/cli.hpp"

#include "langgraph/colex.hpp"
#include "langgraph/error.hpp"
#include "langgraph/geo.hpp"
#include "langgraph/ingest.hpp"
#include "langgraph/phon.hpp"
#include "langgraph/stats.hpp"
#include "langgraph/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>

namespace langgraph::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr std::string_view kModule = "cli";

const std::vector<std::string> kRatingSets{"concrete", "abstract", "aff.concrete", "aff.abstract"};

[[noreturn]] void config_error(const std::string& message) {
    throw Error(ErrorKind::InvalidConfig, kModule, message);
}

std::string affect_mode_name(concepts::AffectRule rule) {
    return rule == concepts::AffectRule::SameSide ? "same-side" : "per-rating";
}

concepts::AffectRule parse_affect_mode(const std::string& text) {
    if (text == "per-rating") return concepts::AffectRule::PerRating;
    if (text == "same-side") return concepts::AffectRule::SameSide;
    config_error("affect_mode must be 'per-rating' or 'same-side', got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    for (const auto& item : util::split(text, ',')) {
        auto t = util::trim(item);
        if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
}

Attribute attribute_arg(const std::string& name) {
    auto a = parse_attribute(name);
    if (!a) throw Error(ErrorKind::UnknownAttribute, kModule, "unknown attribute '" + name + "'");
    return *a;
}

std::vector<Attribute> attribute_list(const std::string& text) {
    std::vector<Attribute> out;
    for (const auto& n : split_list(text)) out.push_back(attribute_arg(n));
    return out;
}

stats::GroupKey group_key_arg(const std::string& text) {
    auto k = stats::parse_group_key(text);
    if (!k) config_error("group key must be macroarea, cross or relatedness, got '" + text + "'");
    return *k;
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string num(double v) { return std::isnan(v) ? "NA" : util::format_double(v); }

std::string join(const std::vector<std::string>& items, char sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

ordered_json string_list(const std::vector<std::string>& v) {
    ordered_json j = ordered_json::array();
    for (const auto& s : v) j.push_back(s);
    return j;
}

// ---------------------------------------------------------------------------
// Build pipeline

PairValueTable load_matrix(const fs::path& path, Diagnostics& diag) {
    return ingest::load_pair_matrix(path, kUnitRange, &diag);
}

}  // namespace

BuildConfig load_config(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) config_error("cannot open config " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& ex) {
        config_error("config " + path.string() + " is not valid JSON: " + ex.what());
    }
    if (!doc.is_object()) config_error("config must be a JSON object");
    const fs::path base = path.parent_path();
    BuildConfig c;
    auto as_path = [&](const std::string& key, const nlohmann::json& v) {
        if (!v.is_string()) config_error("config key '" + key + "' must be a string");
        const fs::path p = v.get<std::string>();
        return p.is_absolute() ? p : base / p;
    };
    auto as_count = [&](const std::string& key, const nlohmann::json& v) -> std::uint64_t {
        if (!v.is_number_integer() || v.get<long long>() < 0) {
            config_error("config key '" + key + "' must be a nonnegative integer");
        }
        return v.get<std::uint64_t>();
    };
    for (const auto& [key, v] : doc.items()) {
        if (key == "languages") c.languages = as_path(key, v);
        else if (key == "colex") c.colex = as_path(key, v);
        else if (key == "ratings") c.ratings = as_path(key, v);
        else if (key == "wordlists") c.wordlists = as_path(key, v);
        else if (key == "genetic_matrix") c.genetic_matrix = as_path(key, v);
        else if (key == "syntactic_matrix") c.syntactic_matrix = as_path(key, v);
        else if (key == "phon_matrix") c.phon_matrix = as_path(key, v);
        else if (key == "output_dir") c.output_dir = as_path(key, v);
        else if (key == "concept_sets") {
            if (!v.is_array()) config_error("config key 'concept_sets' must be an array of strings");
            std::vector<std::string> sets;
            for (const auto& s : v) {
                if (!s.is_string()) config_error("config key 'concept_sets' must be an array of strings");
                sets.push_back(s.get<std::string>());
            }
            c.concept_sets = std::move(sets);
        } else if (key == "min_languages_any") c.min_languages_any = as_count(key, v);
        else if (key == "min_languages_both") c.min_languages_both = as_count(key, v);
        else if (key == "min_shared_concepts") c.min_shared_concepts = as_count(key, v);
        else if (key == "neighbour_threshold") c.neighbour_threshold = static_cast<std::uint32_t>(as_count(key, v));
        else if (key == "seed") c.seed = as_count(key, v);
        else if (key == "threads") c.threads = static_cast<unsigned>(as_count(key, v));
        else if (key == "affect_mode") {
            if (!v.is_string()) config_error("config key 'affect_mode' must be a string");
            c.affect_mode = parse_affect_mode(v.get<std::string>());
        } else {
            config_error("unknown config key '" + key + "'");
        }
    }
    return c;
}

void validate(const BuildConfig& c) {
    if (!c.languages) config_error("no languages file given (config key 'languages' or --languages)");
    const std::pair<const char*, const std::optional<fs::path>*> inputs[] = {
        {"languages", &c.languages},       {"colex", &c.colex},
        {"ratings", &c.ratings},           {"wordlists", &c.wordlists},
        {"genetic_matrix", &c.genetic_matrix}, {"syntactic_matrix", &c.syntactic_matrix},
        {"phon_matrix", &c.phon_matrix},
    };
    for (const auto& [key, p] : inputs) {
        if (*p && !fs::is_regular_file(**p)) {
            config_error(std::string(key) + " file " + (*p)->string() + " does not exist");
        }
    }
    if (c.min_languages_any == 0 || c.min_languages_both == 0 || c.min_shared_concepts == 0 ||
        c.neighbour_threshold == 0 || c.threads == 0) {
        config_error("thresholds and threads must be positive");
    }
    if (c.concept_sets) {
        for (const auto& name : *c.concept_sets) {
            if (!semantic_attribute(name)) config_error("unknown concept set '" + name + "'");
            if (!c.colex) config_error("concept set '" + name + "' requested without a colex file");
            const bool rated = std::find(kRatingSets.begin(), kRatingSets.end(), name) != kRatingSets.end();
            if (rated && !c.ratings) config_error("concept set '" + name + "' needs a ratings file");
        }
    }
}

BuildResult build_graph(const BuildConfig& config, Diagnostics& diag) {
    validate(config);
    const unsigned threads = config.threads;
    ordered_json report;
    ordered_json attributes = ordered_json::object();
    ordered_json exclusions = ordered_json::object();
    ordered_json skipped = ordered_json::object();

    auto languages = ingest::load_languages(*config.languages, &diag);
    std::vector<std::string> ids;
    for (const auto& r : languages) ids.push_back(r.id);
    std::sort(ids.begin(), ids.end());

    std::vector<AttributeSource> sources;
    auto add_source = [&](Attribute attr, PairValueTable table, std::string provenance) {
        ordered_json a;
        a["languages"] = table.ids().size();
        a["pairs"] = table.size();
        a["source"] = provenance;
        attributes[std::string(attribute_name(attr))] = std::move(a);
        sources.push_back({attr, std::move(table), std::move(provenance)});
    };

    // Geography and contact.
    auto geo = geo::geo_tables(languages, threads);
    exclusions["missing_coordinates"] = string_list(geo.excluded);
    if (!geo.km.empty()) {
        add_source(Attribute::GeoDist, geo.km, "haversine km, min-max rescaled");
        add_source(Attribute::ContactDist, geo.contact, "in-between language count, min-max rescaled");
    } else {
        skipped["geo_dist"] = "fewer than two languages with coordinates";
        diag.warn("cli: geo_dist skipped: fewer than two languages with coordinates");
    }

    // Genealogy.
    if (config.genetic_matrix) {
        add_source(Attribute::Genetic, load_matrix(*config.genetic_matrix, diag),
                   "file " + config.genetic_matrix->filename().string());
    } else {
        auto table = graph::genetic_distance_table(languages, threads);
        std::vector<std::string> no_path;
        for (const auto& r : languages) {
            if (r.classification.empty()) no_path.push_back(r.id);
        }
        std::sort(no_path.begin(), no_path.end());
        exclusions["missing_classification"] = string_list(no_path);
        if (table.empty()) {
            skipped["genetic"] = "fewer than two languages with a classification path";
        } else {
            add_source(Attribute::Genetic, std::move(table), "1 - shared prefix / longer classification path");
        }
    }

    if (config.syntactic_matrix) {
        add_source(Attribute::Syntactic, load_matrix(*config.syntactic_matrix, diag),
                   "file " + config.syntactic_matrix->filename().string());
    }

    // Phonology.
    if (config.phon_matrix) {
        add_source(Attribute::Phon, load_matrix(*config.phon_matrix, diag),
                   "file " + config.phon_matrix->filename().string());
    } else if (config.wordlists) {
        const auto wordlists = ingest::load_wordlists(*config.wordlists, &diag);
        auto spec = PhonDistanceSpec::defaults();
        spec.min_shared_concepts = config.min_shared_concepts;
        auto table = phon::phonological_distance_table(wordlists, spec, threads);
        const phon::WordlistIndex index(wordlists, spec.concept_set);
        const std::size_t w = index.languages().size();
        std::set<std::string> paired(table.ids().begin(), table.ids().end());
        std::vector<std::string> unpaired;
        for (const auto& id : index.languages()) {
            if (!paired.count(id)) unpaired.push_back(id);
        }
        ordered_json low;
        low["pairs"] = w * (w - (w > 0 ? 1 : 0)) / 2 - table.size();
        low["languages_without_pairs"] = string_list(unpaired);
        exclusions["phon_low_overlap"] = std::move(low);
        if (table.empty()) {
            skipped["phon"] = "no language pair shares enough concepts";
        } else {
            add_source(Attribute::Phon, std::move(table),
                       "mean LDN over " + spec.concept_set.name() + " concepts, min shared " +
                           std::to_string(spec.min_shared_concepts));
        }
    }

    // Semantics.
    if (config.colex) {
        const auto colex_table = ingest::load_colex(*config.colex, &diag);
        std::optional<RatingTable> ratings;
        if (config.ratings) ratings = ingest::load_ratings(*config.ratings, {}, &diag);
        std::vector<std::string> names;
        if (config.concept_sets) {
            names = *config.concept_sets;
        } else {
            names = concepts::builtin_set_names();
            if (ratings) names.insert(names.end(), kRatingSets.begin(), kRatingSets.end());
        }
        ordered_json zero = ordered_json::object();
        for (const auto& name : names) {
            const auto attr = *semantic_attribute(name);
            const bool rated = std::find(kRatingSets.begin(), kRatingSets.end(), name) != kRatingSets.end();
            const auto mode = rated ? colex::SelectionMode::Both : colex::SelectionMode::Any;
            const auto min_langs = rated ? config.min_languages_both : config.min_languages_any;
            auto skip = [&](const std::string& why) {
                skipped[name] = why;
                diag.warn("cli: concept set '" + name + "' skipped: " + why);
            };
            try {
                ConceptSet set;
                if (!rated) {
                    set = concepts::builtin_set(name);
                } else {
                    const auto conc = name.ends_with("abstract") ? concepts::Concreteness::Abstract
                                                                 : concepts::Concreteness::Concrete;
                    const auto base_name = conc == concepts::Concreteness::Abstract ? "abstract" : "concrete";
                    set = concepts::filter_by_concreteness(*ratings, conc, base_name);
                    if (name.starts_with("aff.")) set = concepts::filter_by_affect(set, *ratings, config.affect_mode, name);
                }
                const auto patterns = colex::select_patterns(colex_table, set, mode, min_langs);
                const auto matrix = colex::build_matrix(colex_table, patterns, ids);
                zero[name] = string_list(colex::zero_rows(matrix));
                auto table = colex::semantic_distance_table(matrix, threads);
                if (table.empty()) {
                    skip("fewer than two languages attest any selected pattern");
                    continue;
                }
                add_source(attr, std::move(table),
                           "cosine over " + std::to_string(patterns.size()) + " patterns of " +
                               std::to_string(set.size()) + " concepts (" +
                               (mode == colex::SelectionMode::Any ? "any" : "both") + ", min " +
                               std::to_string(min_langs) + " languages)");
            } catch (const Error& ex) {
                if (ex.kind() != ErrorKind::EmptyPatternList && ex.kind() != ErrorKind::EmptyResult) throw;
                skip(ex.what());
            }
        }
        exclusions["zero_vectors"] = std::move(zero);
    }

    GraphConfig gc;
    gc.contact.neighbour_threshold = config.neighbour_threshold;
    auto graph = LanguageGraph::assemble(std::move(languages), std::move(sources), gc);

    ordered_json cfg;
    const std::pair<const char*, const std::optional<fs::path>*> inputs[] = {
        {"languages", &config.languages},       {"colex", &config.colex},
        {"ratings", &config.ratings},           {"wordlists", &config.wordlists},
        {"genetic_matrix", &config.genetic_matrix}, {"syntactic_matrix", &config.syntactic_matrix},
        {"phon_matrix", &config.phon_matrix},
    };
    for (const auto& [key, p] : inputs) {
        if (*p) cfg[key] = (*p)->filename().string();
    }
    if (config.concept_sets) cfg["concept_sets"] = string_list(*config.concept_sets);
    cfg["min_languages_any"] = config.min_languages_any;
    cfg["min_languages_both"] = config.min_languages_both;
    cfg["min_shared_concepts"] = config.min_shared_concepts;
    cfg["neighbour_threshold"] = config.neighbour_threshold;
    cfg["seed"] = config.seed;
    cfg["affect_mode"] = affect_mode_name(config.affect_mode);

    std::array<std::size_t, 4> per_level{};
    for (std::size_t e = 0; e < graph.edge_count(); ++e) ++per_level[static_cast<std::size_t>(graph.relatedness(e))];
    ordered_json levels;
    for (auto level : kRelatednessLevels) levels[std::string(to_string(level))] = per_level[static_cast<std::size_t>(level)];

    report["languages"] = graph.nodes().size();
    report["edges"] = graph.edge_count();
    report["edges_per_relatedness"] = std::move(levels);
    report["attributes"] = std::move(attributes);
    report["skipped"] = std::move(skipped);
    report["exclusions"] = std::move(exclusions);
    report["warnings"] = string_list(diag.warnings());
    report["config"] = std::move(cfg);
    return BuildResult{std::move(graph), report.dump(2) + "\n", std::move(geo)};
}

BuildResult cmd_build(const BuildConfig& config, Diagnostics& diag) {
    auto result = build_graph(config, diag);
    const auto& dir = config.output_dir;
    graph::export_graph(result.graph, dir / "graph.json", graph::GraphFormat::Json);
    graph::export_graph(result.graph, dir / "edges.tsv", graph::GraphFormat::EdgesTsv);
    ContactConfig cc;
    cc.neighbour_threshold = config.neighbour_threshold;
    geo::write_contact_edges(dir / "contact_edges.tsv", result.geo, cc);
    util::write_text_file(dir / "build_report.json", result.report, kModule);
    return result;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidConfig:
        case ErrorKind::UnknownAnalysis:
        case ErrorKind::UnknownAttribute:
        case ErrorKind::UnknownSetName:
            return kConfigError;
        default:
            return kDataError;
    }
}

// ---------------------------------------------------------------------------
// Subcommands

namespace {

struct StatsOptions {
    std::string graph;
    std::string out;
    std::string config;
    std::uint64_t seed = 42;
    std::string x, y, group = "macroarea";
    std::string target, predictor, controls, predictors;
    bool ungrouped = false;
    std::size_t sample = 0;
    std::string strata = "relatedness";
    std::string sets = "nuclear,non-nuclear,emotion,random";
    std::size_t top_families = 5;
};

fs::path stats_output(const StatsOptions& o, const std::string& analysis) {
    if (!o.out.empty()) return o.out;
    return fs::path(o.graph).parent_path() / ("stats_" + analysis + ".csv");
}

LanguageGraph subgraph(const LanguageGraph& g, const std::vector<std::size_t>& edges) {
    std::vector<LanguageGraph::EdgeKey> keys;
    std::map<Attribute, std::vector<double>> columns;
    for (auto e : edges) keys.push_back(g.key(e));
    for (auto a : all_attributes()) {
        if (!g.has_attribute(a)) continue;
        auto& col = columns[a];
        for (auto e : edges) col.push_back(g.column(a)[e]);
    }
    return LanguageGraph::from_columns(g.nodes(), std::move(keys), std::move(columns), g.provenance());
}

struct StatsOutput {
    std::string csv;
    std::size_t rows = 0;
    ordered_json parameters;
};

StatsOutput run_pearson(const LanguageGraph& g, const StatsOptions& o, Diagnostics& diag) {
    const auto x = attribute_arg(o.x);
    const auto y = attribute_arg(o.y);
    const auto key = group_key_arg(o.group);
    const auto rows = stats::group_pearson(g, x, y, key, &diag);
    StatsOutput out;
    out.csv = "group,x,y,r,ci_low,ci_high,p_value,n\n";
    for (const auto& r : rows) {
        out.csv += csv_field(r.group) + "," + std::string(attribute_name(x)) + "," +
                   std::string(attribute_name(y)) + "," + num(r.r) + "," + num(r.ci_low) + "," +
                   num(r.ci_high) + "," + num(r.p_value) + "," + std::to_string(r.n) + "\n";
    }
    out.rows = rows.size();
    out.parameters = {{"x", attribute_name(x)}, {"y", attribute_name(y)}, {"group", o.group}};
    return out;
}

LanguageGraph maybe_sample(const LanguageGraph& g, const StatsOptions& o, const std::vector<Attribute>& required,
                           ordered_json& params) {
    if (o.sample == 0) return g;
    const auto key = group_key_arg(o.strata);
    params["sample"] = o.sample;
    params["strata"] = o.strata;
    return subgraph(g, stats::stratified_sample(g, key, o.sample, o.seed, required));
}

StatsOutput run_beta(const LanguageGraph& full, const StatsOptions& o, Diagnostics& diag) {
    const auto target = attribute_arg(o.target);
    const auto predictor = attribute_arg(o.predictor);
    const auto controls = attribute_list(o.controls);
    StatsOutput out;
    std::vector<Attribute> required{target, predictor};
    for (auto c : controls) required.push_back(c);
    const auto g = maybe_sample(full, o, required, out.parameters);
    const auto rows = stats::standardized_beta(g, target, predictor, controls, !o.ungrouped, &diag);
    out.csv = "group,target,predictor,controls,beta,ci_low,ci_high,p_value,n\n";
    for (const auto& r : rows) {
        out.csv += csv_field(r.group) + "," + r.target + "," + r.predictor + "," + csv_field(join(r.controls, ';')) +
                   "," + num(r.beta) + "," + num(r.ci95.first) + "," + num(r.ci95.second) + "," +
                   num(r.p_value) + "," + std::to_string(r.n) + "\n";
    }
    out.rows = rows.size();
    out.parameters["target"] = attribute_name(target);
    out.parameters["predictor"] = attribute_name(predictor);
    std::vector<std::string> names;
    for (auto c : controls) names.emplace_back(attribute_name(c));
    out.parameters["controls"] = string_list(names);
    out.parameters["by_relatedness"] = !o.ungrouped;
    return out;
}

StatsOutput run_ols(const LanguageGraph& full, const StatsOptions& o, Diagnostics&) {
    const auto target = attribute_arg(o.target);
    const auto predictors = attribute_list(o.predictors);
    if (predictors.empty()) config_error("ols needs --predictors");
    StatsOutput out;
    std::vector<Attribute> required{target};
    for (auto p : predictors) required.push_back(p);
    const auto g = maybe_sample(full, o, required, out.parameters);
    for (auto a : required) {
        if (!g.has_attribute(a)) {
            throw Error(ErrorKind::UnknownAttribute, kModule,
                        "graph has no '" + std::string(attribute_name(a)) + "' attribute");
        }
    }
    std::vector<std::vector<double>> X(predictors.size());
    std::vector<double> y;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        bool ok = true;
        for (auto a : required) ok = ok && !std::isnan(g.column(a)[e]);
        if (!ok) continue;
        y.push_back(g.column(target)[e]);
        for (std::size_t j = 0; j < predictors.size(); ++j) X[j].push_back(g.column(predictors[j])[e]);
    }
    std::vector<std::string> names;
    for (auto p : predictors) names.emplace_back(attribute_name(p));
    const auto fit = stats::ols(X, y, names);
    out.csv = "term,estimate,std_error,ci_low,ci_high,t,p_value,n\n";
    for (const auto& c : fit.coefficients) {
        out.csv += c.name + "," + num(c.estimate) + "," + num(c.std_error) + "," + num(c.ci_low) + "," +
                   num(c.ci_high) + "," + num(c.t) + "," + num(c.p_value) + "," + std::to_string(fit.n) + "\n";
    }
    out.rows = fit.coefficients.size();
    out.parameters["target"] = attribute_name(target);
    out.parameters["predictors"] = string_list(names);
    out.parameters["r_squared"] = fit.r_squared;
    return out;
}

StatsOutput run_ari(const LanguageGraph& g, const StatsOptions& o, Diagnostics& diag) {
    const auto sets = attribute_list(o.sets);
    const auto reports = stats::family_ari_report(g, sets, o.top_families, &diag);
    StatsOutput out;
    out.csv = "family,languages,set_a,set_b,ari,communities_a,communities_b\n";
    auto communities = [](const Partition& p) {
        std::set<std::uint32_t> labels;
        for (const auto& [_, l] : p) labels.insert(l);
        return labels.size();
    };
    for (const auto& r : reports) {
        for (std::size_t i = 0; i < r.sets.size(); ++i) {
            for (std::size_t j = i + 1; j < r.sets.size(); ++j) {
                out.csv += csv_field(r.family) + "," + std::to_string(r.languages) + "," + r.sets[i] + "," +
                           r.sets[j] + "," + num(r.ari[i][j]) + "," + std::to_string(communities(r.partitions[i])) +
                           "," + std::to_string(communities(r.partitions[j])) + "\n";
                ++out.rows;
            }
        }
    }
    std::vector<std::string> names;
    for (auto a : sets) names.emplace_back(attribute_name(a));
    out.parameters["sets"] = string_list(names);
    out.parameters["top_families"] = o.top_families;
    out.parameters["families_reported"] = reports.size();
    return out;
}

void print_summary(std::ostream& out, const ordered_json& j) { out << j.dump() << '\n'; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Language distance graphs from colexification, phonology, geography and genealogy", "langgraph"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "langgraph 1.0");

    // build
    auto* build = app.add_subcommand("build", "Compute every distance and write the language graph");
    std::string config_path, languages, colex_path, ratings, wordlists, genetic, syntactic, phon_matrix, sets_flag,
        output_dir, affect_mode;
    std::size_t min_any = 0, min_both = 0, min_shared = 0;
    std::uint32_t neighbour_threshold = 0;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    build->add_option("--config", config_path, "Flat JSON config; flags override its keys");
    auto* o_lang = build->add_option("--languages", languages, "Language metadata table");
    auto* o_colex = build->add_option("--colex", colex_path, "Colexification table");
    auto* o_ratings = build->add_option("--ratings", ratings, "Concreteness and affect ratings");
    auto* o_words = build->add_option("--wordlists", wordlists, "Transcribed wordlists");
    auto* o_gen = build->add_option("--genetic-matrix", genetic, "Precomputed genetic distances");
    auto* o_syn = build->add_option("--syntactic-matrix", syntactic, "Precomputed syntactic distances");
    auto* o_phon = build->add_option("--phon-matrix", phon_matrix, "Precomputed phonological distances");
    auto* o_sets = build->add_option("--concept-sets", sets_flag, "Comma-separated concept set names");
    auto* o_any = build->add_option("--min-languages-any", min_any, "Min attesting languages, builtin sets");
    auto* o_both = build->add_option("--min-languages-both", min_both, "Min attesting languages, rating sets");
    auto* o_shared = build->add_option("--min-shared-concepts", min_shared, "Min shared wordlist concepts");
    auto* o_nb = build->add_option("--neighbour-threshold", neighbour_threshold, "Neighbour when count below this");
    auto* o_seed = build->add_option("--seed", seed, "Seed recorded in the report");
    auto* o_out = build->add_option("--output-dir", output_dir, "Directory for graph and report files");
    auto* o_threads = build->add_option("--threads", threads, "Worker threads");
    auto* o_aff = build->add_option("--affect-mode", affect_mode, "per-rating or same-side");

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "Hypothesis tests over a built graph");
    stats_cmd->require_subcommand(1);
    StatsOptions so;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--graph", so.graph, "graph.json from build")->required();
        sub->add_option("--out", so.out, "Output CSV (default: stats_<analysis>.csv next to the graph)");
        sub->add_option("--config", so.config, "Config whose seed is used unless --seed is given");
        sub->add_option("--seed", so.seed, "Seed for sampling");
    };
    auto* s_pearson = stats_cmd->add_subcommand("pearson", "Pearson r per group");
    add_common(s_pearson);
    s_pearson->add_option("--x", so.x)->required();
    s_pearson->add_option("--y", so.y)->required();
    s_pearson->add_option("--group", so.group, "macroarea, cross or relatedness");
    auto* s_beta = stats_cmd->add_subcommand("beta", "Standardized betas per relatedness level");
    add_common(s_beta);
    s_beta->add_option("--target", so.target)->required();
    s_beta->add_option("--predictor", so.predictor)->required();
    s_beta->add_option("--controls", so.controls, "Comma-separated control attributes");
    s_beta->add_flag("--ungrouped", so.ungrouped, "One regression over all edges");
    s_beta->add_option("--sample", so.sample, "Stratified sample size (0 = all edges)");
    s_beta->add_option("--strata", so.strata, "Sampling strata: macroarea, cross or relatedness");
    auto* s_ols = stats_cmd->add_subcommand("ols", "Ordinary least squares on raw attributes");
    add_common(s_ols);
    s_ols->add_option("--target", so.target)->required();
    s_ols->add_option("--predictors", so.predictors)->required();
    s_ols->add_option("--sample", so.sample, "Stratified sample size (0 = all edges)");
    s_ols->add_option("--strata", so.strata, "Sampling strata: macroarea, cross or relatedness");
    auto* s_ari = stats_cmd->add_subcommand("ari", "Community agreement between concept sets per family");
    add_common(s_ari);
    s_ari->add_option("--sets", so.sets, "Comma-separated semantic attributes");
    s_ari->add_option("--top-families", so.top_families, "Largest families to report");

    // dist
    auto* dist = app.add_subcommand("dist", "Histogram of an attribute per relatedness level");
    std::string dist_graph, dist_attr, dist_out;
    std::size_t bins = 64;
    dist->add_option("--graph", dist_graph)->required();
    dist->add_option("--attribute", dist_attr)->required();
    dist->add_option("--out", dist_out, "Output CSV (default: dist_<attribute>.csv next to the graph)");
    dist->add_option("--bins", bins, "Equal-width bins over [0, 1]");

    // export
    auto* exp = app.add_subcommand("export", "Re-export a graph.json as edges-tsv or JSON");
    std::string exp_graph, exp_out, exp_format = "tsv";
    exp->add_option("--graph", exp_graph)->required();
    exp->add_option("--out", exp_out)->required();
    exp->add_option("--format", exp_format, "tsv or json");

    // synth
    auto* syn = app.add_subcommand("synth", "Write a synthetic input world");
    WorldSpec ws;
    std::string syn_out;
    syn->add_option("--out", syn_out, "Directory for the world files")->required();
    syn->add_option("--languages", ws.languages);
    syn->add_option("--families", ws.families);
    syn->add_option("--min-family-size", ws.min_family_size);
    syn->add_option("--genera", ws.genera_per_family);
    syn->add_option("--branches", ws.branches_per_genus);
    syn->add_option("--patterns", ws.patterns);
    syn->add_option("--missing-coordinates", ws.missing_coordinates);
    syn->add_option("--seed", ws.seed);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    Diagnostics diag;
    try {
        if (*build) {
            BuildConfig c;
            if (!config_path.empty()) c = load_config(config_path);
            if (*o_lang) c.languages = languages;
            if (*o_colex) c.colex = colex_path;
            if (*o_ratings) c.ratings = ratings;
            if (*o_words) c.wordlists = wordlists;
            if (*o_gen) c.genetic_matrix = genetic;
            if (*o_syn) c.syntactic_matrix = syntactic;
            if (*o_phon) c.phon_matrix = phon_matrix;
            if (*o_sets) c.concept_sets = split_list(sets_flag);
            if (*o_any) c.min_languages_any = min_any;
            if (*o_both) c.min_languages_both = min_both;
            if (*o_shared) c.min_shared_concepts = min_shared;
            if (*o_nb) c.neighbour_threshold = neighbour_threshold;
            if (*o_seed) c.seed = seed;
            if (*o_out) c.output_dir = output_dir;
            if (*o_threads) c.threads = threads;
            if (*o_aff) c.affect_mode = parse_affect_mode(affect_mode);
            const auto result = cmd_build(c, diag);
            for (const auto& w : diag.warnings()) err << "warning: " << w << '\n';
            std::vector<std::string> attrs;
            for (auto a : all_attributes()) {
                if (result.graph.has_attribute(a)) attrs.emplace_back(attribute_name(a));
            }
            print_summary(out, {{"command", "build"},
                                {"status", "ok"},
                                {"languages", result.graph.nodes().size()},
                                {"edges", result.graph.edge_count()},
                                {"attributes", string_list(attrs)},
                                {"warnings", diag.warnings().size()},
                                {"output_dir", c.output_dir.string()}});
            return kOk;
        }
        if (*stats_cmd) {
            const bool seed_flag = (*stats_cmd->get_subcommands().front()).count("--seed") > 0;
            if (!so.config.empty() && !seed_flag) so.seed = load_config(so.config).seed;
            const auto g = graph::import_graph(so.graph);
            std::string analysis;
            StatsOutput result;
            if (*s_pearson) {
                analysis = "pearson";
                result = run_pearson(g, so, diag);
            } else if (*s_beta) {
                analysis = "beta";
                result = run_beta(g, so, diag);
            } else if (*s_ols) {
                analysis = "ols";
                result = run_ols(g, so, diag);
            } else if (*s_ari) {
                analysis = "ari";
                result = run_ari(g, so, diag);
            } else {
                throw Error(ErrorKind::UnknownAnalysis, kModule, "unknown analysis");
            }
            const auto path = stats_output(so, analysis);
            util::write_text_file(path, result.csv, kModule);
            ordered_json meta;
            meta["analysis"] = analysis;
            meta["graph"] = fs::path(so.graph).filename().string();
            meta["seed"] = so.seed;
            meta["parameters"] = result.parameters;
            meta["rows"] = result.rows;
            meta["warnings"] = string_list(diag.warnings());
            util::write_text_file(path.string() + ".meta.json", meta.dump(2) + "\n", kModule);
            for (const auto& w : diag.warnings()) err << "warning: " << w << '\n';
            print_summary(out, {{"command", "stats"},
                                {"analysis", analysis},
                                {"status", "ok"},
                                {"rows", result.rows},
                                {"seed", so.seed},
                                {"output", path.string()}});
            return kOk;
        }
        if (*dist) {
            const auto g = graph::import_graph(dist_graph);
            const auto attr = attribute_arg(dist_attr);
            const auto h = stats::distance_histogram(g, attr, bins);
            std::string csv = "relatedness,bin,bin_low,bin_high,count\n";
            for (auto level : kRelatednessLevels) {
                const auto& counts = h.counts[static_cast<std::size_t>(level)];
                for (std::size_t b = 0; b < bins; ++b) {
                    csv += std::string(to_string(level)) + "," + std::to_string(b) + "," +
                           num(static_cast<double>(b) / static_cast<double>(bins)) + "," +
                           num(static_cast<double>(b + 1) / static_cast<double>(bins)) + "," +
                           std::to_string(counts[b]) + "\n";
                }
            }
            const fs::path path = dist_out.empty()
                                      ? fs::path(dist_graph).parent_path() /
                                            ("dist_" + std::string(attribute_name(attr)) + ".csv")
                                      : fs::path(dist_out);
            util::write_text_file(path, csv, kModule);
            print_summary(out, {{"command", "dist"},
                                {"status", "ok"},
                                {"attribute", attribute_name(attr)},
                                {"bins", bins},
                                {"output", path.string()}});
            return kOk;
        }
        if (*exp) {
            graph::GraphFormat format;
            if (exp_format == "tsv" || exp_format == "edges-tsv") {
                format = graph::GraphFormat::EdgesTsv;
            } else if (exp_format == "json") {
                format = graph::GraphFormat::Json;
            } else {
                config_error("format must be tsv or json, got '" + exp_format + "'");
            }
            const auto g = graph::import_graph(exp_graph);
            graph::export_graph(g, exp_out, format);
            print_summary(out, {{"command", "export"},
                                {"status", "ok"},
                                {"format", exp_format},
                                {"edges", g.edge_count()},
                                {"output", exp_out}});
            return kOk;
        }
        if (*syn) {
            const auto world = synth::generate(ws);
            synth::write_world(world, syn_out);
            print_summary(out, {{"command", "synth"},
                                {"status", "ok"},
                                {"languages", world.languages.size()},
                                {"colex_records", world.colex.size()},
                                {"output_dir", syn_out}});
            return kOk;
        }
    } catch (const Error& ex) {
        for (const auto& w : diag.warnings()) err << "warning: " << w << '\n';
        err << "error: " << ex.what() << '\n';
        return exit_code_for(ex.kind());
    } catch (const std::exception& ex) {
        err << "internal error: " << ex.what() << '\n';
        return kInternalError;
    }
    return kInternalError;
}

}  // namespace langgraph::cli
