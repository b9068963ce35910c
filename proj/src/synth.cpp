#include "langgraph/synth.hpp"

#include "langgraph/concepts.hpp"
#include "langgraph/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <set>

namespace langgraph::synth {

namespace {

constexpr std::string_view kModule = "synth";

// Only raw engine output is used so worlds are identical across standard
// library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::size_t below(std::size_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = 0;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % n);
    }

    double normal() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

struct Region {
    const char* macroarea;
    double lat_lo, lat_hi, lon_lo, lon_hi;
};

constexpr std::array<Region, 6> kRegions{{
    {"Africa", -30.0, 30.0, -15.0, 45.0},
    {"Eurasia", 25.0, 60.0, 0.0, 120.0},
    {"Papunesia", -10.0, 5.0, 100.0, 160.0},
    {"North America", 20.0, 60.0, -120.0, -70.0},
    {"South America", -40.0, 5.0, -75.0, -40.0},
    {"Australia", -35.0, -15.0, 115.0, 150.0},
}};

constexpr std::array<std::string_view, 16> kSegments{"p", "t", "k", "m", "n", "s", "l", "r",
                                                      "a", "e", "i", "o", "u", "ŋ", "ə", "ʃ"};

using Form = std::vector<std::uint8_t>;  // indices into kSegments

std::string render(const Form& form) {
    std::string out;
    for (auto s : form) out += kSegments[s];
    return out;
}

Form random_form(Rng& rng) {
    Form f(3 + rng.below(5));
    for (auto& s : f) s = static_cast<std::uint8_t>(rng.below(kSegments.size()));
    return f;
}

void mutate(Form& f, Rng& rng) {
    const auto seg = static_cast<std::uint8_t>(rng.below(kSegments.size()));
    switch (rng.below(3)) {
        case 0:
            f[rng.below(f.size())] = seg;
            break;
        case 1:
            f.insert(f.begin() + static_cast<std::ptrdiff_t>(rng.below(f.size() + 1)), seg);
            break;
        default:
            if (f.size() > 2) f.erase(f.begin() + static_cast<std::ptrdiff_t>(rng.below(f.size())));
            break;
    }
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

std::string zero_pad(std::size_t v, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%0*zu", width, v);
    return buf;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

World generate(const WorldSpec& spec) {
    if (spec.languages < 2 || spec.families == 0 || spec.genera_per_family == 0 ||
        spec.branches_per_genus == 0) {
        throw Error(ErrorKind::InvalidConfig, kModule, "world needs >= 2 languages and >= 1 family, genus, branch");
    }
    if (spec.families * spec.min_family_size > spec.languages) {
        throw Error(ErrorKind::InvalidConfig, kModule, "min_family_size * families exceeds language count");
    }
    if (spec.missing_coordinates > spec.languages) {
        throw Error(ErrorKind::InvalidConfig, kModule, "more coordinate-less languages than languages");
    }
    Rng rng(spec.seed);
    World world;

    // Family membership, then shuffled so ids carry no family order.
    std::vector<std::size_t> family_of;
    for (std::size_t f = 0; f < spec.families; ++f) family_of.insert(family_of.end(), spec.min_family_size, f);
    double weight_sum = 0.0;
    for (std::size_t f = 0; f < spec.families; ++f) weight_sum += 1.0 / static_cast<double>(f + 1);
    while (family_of.size() < spec.languages) {
        double u = rng.uniform() * weight_sum;
        std::size_t f = 0;
        while (f + 1 < spec.families && u >= 1.0 / static_cast<double>(f + 1)) {
            u -= 1.0 / static_cast<double>(f + 1);
            ++f;
        }
        family_of.push_back(f);
    }
    for (std::size_t i = family_of.size(); i > 1; --i) std::swap(family_of[i - 1], family_of[rng.below(i)]);

    struct FamilyHome {
        double lat, lon;
    };
    std::vector<FamilyHome> homes;
    for (std::size_t f = 0; f < spec.families; ++f) {
        const auto& r = kRegions[f % kRegions.size()];
        homes.push_back({r.lat_lo + rng.uniform() * (r.lat_hi - r.lat_lo),
                         r.lon_lo + rng.uniform() * (r.lon_hi - r.lon_lo)});
    }

    // Deep groupings above families and subgroups between genus and branch
    // give classification paths of varying depth.
    const std::size_t phyla = std::max<std::size_t>(1, spec.families / 2);
    const std::size_t branches_total = spec.families * spec.genera_per_family * spec.branches_per_genus;
    std::vector<std::size_t> branch_depth(branches_total);
    for (auto& d : branch_depth) d = rng.below(3);

    const int width = spec.languages >= 1000 ? 4 : 3;
    std::vector<std::size_t> genus_of(spec.languages), branch_of(spec.languages);
    for (std::size_t i = 0; i < spec.languages; ++i) {
        const auto f = family_of[i];
        LanguageRecord r;
        r.id = "lg" + zero_pad(i + 1, width);
        r.name = "Language " + std::to_string(i + 1);
        genus_of[i] = rng.below(spec.genera_per_family);
        branch_of[i] = rng.below(spec.branches_per_genus);
        r.family = "Fam" + zero_pad(f + 1, 2);
        r.genus = r.family + "-g" + std::to_string(genus_of[i] + 1);
        r.branch = r.genus + "-b" + std::to_string(branch_of[i] + 1);
        r.parent = r.branch;
        r.macroarea = kRegions[f % kRegions.size()].macroarea;
        r.area = r.macroarea;
        const double lat = std::clamp(homes[f].lat + 2.0 * rng.normal(), -89.9, 89.9);
        double lon = homes[f].lon + 2.0 * rng.normal();
        if (lon > 180.0) lon -= 360.0;
        if (lon < -180.0) lon += 360.0;
        if (i >= spec.missing_coordinates) {
            r.latitude = std::round(lat * 1e4) / 1e4;
            r.longitude = std::round(lon * 1e4) / 1e4;
        }
        r.classification = {"Phy" + std::to_string(f % phyla + 1), r.family, r.genus};
        const auto b = (f * spec.genera_per_family + genus_of[i]) * spec.branches_per_genus + branch_of[i];
        for (std::size_t d = 0; d < branch_depth[b]; ++d) r.classification.push_back(r.branch + "-s" + std::to_string(d + 1));
        r.classification.push_back(r.branch);
        if (rng.uniform() < 0.4) r.classification.push_back(r.id + "-dialects");
        r.classification.push_back(r.id);
        world.languages.push_back(std::move(r));
    }

    // Concept universe and patterns.
    std::set<std::string> universe_set;
    for (const auto& name : concepts::builtin_set_names()) {
        const auto set = concepts::builtin_set(name);
        universe_set.insert(set.members().begin(), set.members().end());
    }
    const std::vector<std::string> universe(universe_set.begin(), universe_set.end());
    const std::size_t u = universe.size();
    if (spec.patterns > u * (u - 1) / 2) {
        throw Error(ErrorKind::InvalidConfig, kModule, "more patterns than concept pairs");
    }
    std::set<std::pair<std::size_t, std::size_t>> chosen;
    std::vector<std::pair<std::size_t, std::size_t>> patterns;
    while (patterns.size() < spec.patterns) {
        auto a = rng.below(u);
        auto b = rng.below(u);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (chosen.insert({a, b}).second) patterns.emplace_back(a, b);
    }

    const std::size_t genera_total = spec.families * spec.genera_per_family;
    std::vector<double> base(spec.patterns);
    for (auto& b : base) {
        const double x = rng.uniform();
        b = logit(0.03 + 0.5 * x * x);
    }
    std::vector<double> family_shift(spec.families * spec.patterns);
    for (auto& s : family_shift) s = 1.5 * rng.normal();
    std::vector<double> genus_shift(genera_total * spec.patterns);
    for (auto& s : genus_shift) s = 0.7 * rng.normal();

    for (std::size_t i = 0; i < spec.languages; ++i) {
        const auto f = family_of[i];
        const auto g = f * spec.genera_per_family + genus_of[i];
        for (std::size_t p = 0; p < spec.patterns; ++p) {
            const double prob = sigmoid(base[p] + family_shift[f * spec.patterns + p] +
                                        genus_shift[g * spec.patterns + p] + 0.5 * rng.normal());
            if (rng.uniform() >= prob) continue;
            const auto freq = 1 + static_cast<std::uint64_t>(std::floor(-std::log(1.0 - rng.uniform()) * 8.0));
            ColexRecord rec;
            rec.concept_a = universe[patterns[p].first];
            rec.concept_b = universe[patterns[p].second];
            rec.language = world.languages[i].id;
            rec.frequency = freq;
            rec.forms.push_back({render(random_form(rng)), freq});
            world.colex.push_back(std::move(rec));
        }
    }

    for (const auto& c : universe) {
        RatingRecord r;
        r.lemma = c;
        r.concreteness = round2(1.0 + 4.0 * rng.uniform());
        r.valence = round2(1.0 + 8.0 * rng.uniform());
        r.arousal = round2(1.0 + 8.0 * rng.uniform());
        r.dominance = round2(1.0 + 8.0 * rng.uniform());
        world.ratings.push_back(std::move(r));
    }

    // Wordlists over the nuclear concepts: family proto-forms, mutated per
    // genus, branch and language.
    const auto wl_concepts = concepts::builtin_set("nuclear").members();
    const std::size_t k = wl_concepts.size();
    std::vector<Form> proto(spec.families * k);
    for (auto& f : proto) f = random_form(rng);
    std::vector<Form> genus_form(genera_total * k);
    for (std::size_t g = 0; g < genera_total; ++g) {
        for (std::size_t c = 0; c < k; ++c) {
            auto form = proto[(g / spec.genera_per_family) * k + c];
            const auto edits = 1 + rng.below(2);
            for (std::size_t e = 0; e < edits; ++e) mutate(form, rng);
            genus_form[g * k + c] = std::move(form);
        }
    }
    std::vector<Form> branch_form(branches_total * k);
    for (std::size_t b = 0; b < branches_total; ++b) {
        for (std::size_t c = 0; c < k; ++c) {
            auto form = genus_form[(b / spec.branches_per_genus) * k + c];
            if (rng.uniform() < 0.5) mutate(form, rng);
            branch_form[b * k + c] = std::move(form);
        }
    }
    for (std::size_t i = 0; i < spec.languages; ++i) {
        const auto g = family_of[i] * spec.genera_per_family + genus_of[i];
        const auto b = g * spec.branches_per_genus + branch_of[i];
        for (std::size_t c = 0; c < k; ++c) {
            if (rng.uniform() < spec.wordlist_gap) continue;
            auto form = branch_form[b * k + c];
            if (rng.uniform() < 0.5) mutate(form, rng);
            world.wordlists.push_back({world.languages[i].id, wl_concepts[c], render(form)});
            if (rng.uniform() < 0.1) {
                mutate(form, rng);
                world.wordlists.push_back({world.languages[i].id, wl_concepts[c], render(form)});
            }
        }
    }
    return world;
}

void write_world(const World& world, const std::filesystem::path& dir) {
    ingest::write_languages(dir / "languages.tsv", world.languages);
    ingest::write_colex(dir / "colex.tsv", world.colex);
    ingest::write_ratings(dir / "ratings.tsv", world.ratings);
    ingest::write_wordlists(dir / "wordlists.tsv", world.wordlists);
    const nlohmann::ordered_json config{
        {"languages", "languages.tsv"},
        {"colex", "colex.tsv"},
        {"ratings", "ratings.tsv"},
        {"wordlists", "wordlists.tsv"},
        {"output_dir", "out"},
    };
    util::write_text_file(dir / "config.json", config.dump(2) + "\n", kModule);
}

}  // namespace langgraph::synth
