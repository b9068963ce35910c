#include "langgraph/ingest.hpp"

#include "langgraph/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

namespace langgraph {

namespace {

constexpr std::string_view kModule = "ingest";

[[noreturn]] void fail(ErrorKind kind, const std::string& message, std::size_t line) {
    throw Error(kind, kModule, message, line);
}

const std::string& cell(const util::TextRow& row, std::optional<std::size_t> col) {
    static const std::string empty;
    if (!col || *col >= row.cells.size()) return empty;
    return row.cells[*col];
}

void require_width(const util::TextRow& row, std::size_t width) {
    if (row.cells.size() != width) {
        fail(ErrorKind::MalformedRow,
             "expected " + std::to_string(width) + " columns, found " +
                 std::to_string(row.cells.size()),
             row.line);
    }
}

std::size_t require_column(const util::TextTable& table, std::string_view name,
                           const std::filesystem::path& path) {
    auto col = table.column(name);
    if (!col) {
        throw Error(ErrorKind::MissingColumn, kModule,
                    "column '" + std::string(name) + "' missing in " + path.string(), 1);
    }
    return *col;
}

std::optional<double> optional_number(const std::string& text, std::string_view what,
                                      std::size_t line) {
    const auto t = util::trim(text);
    if (t.empty()) return std::nullopt;
    auto v = util::parse_double(t);
    if (!v || !std::isfinite(*v)) {
        fail(ErrorKind::MalformedRow, "invalid " + std::string(what) + " '" + t + "'", line);
    }
    return v;
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string opt_to_text(const std::optional<double>& v) {
    return v ? util::format_double(*v) : std::string();
}

std::vector<WordForm> parse_forms(const std::string& text, std::size_t line) {
    std::vector<WordForm> forms;
    const auto t = util::trim(text);
    if (t.empty()) return forms;
    for (const auto& item : util::split(t, ';')) {
        const auto colon = item.rfind(':');
        if (colon == std::string::npos || colon == 0) {
            fail(ErrorKind::MalformedForms, "form entry '" + item + "' is not form:count", line);
        }
        auto count = util::parse_int(std::string_view(item).substr(colon + 1));
        if (!count || *count <= 0) {
            fail(ErrorKind::MalformedForms, "form entry '" + item + "' needs a positive count",
                 line);
        }
        forms.push_back(WordForm{item.substr(0, colon), static_cast<std::uint64_t>(*count)});
    }
    return forms;
}

void merge_forms(std::vector<WordForm>& into, const std::vector<WordForm>& from) {
    for (const auto& f : from) {
        auto it = std::find_if(into.begin(), into.end(),
                               [&](const WordForm& w) { return w.form == f.form; });
        if (it == into.end()) {
            into.push_back(f);
        } else {
            it->count += f.count;
        }
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// PairValueTable

PairValueTable::PairValueTable(std::vector<std::string> ids, std::vector<Entry> entries,
                               std::optional<ValueRange> range)
    : range_(range) {
    for (std::size_t i = 1; i < ids.size(); ++i) {
        if (!(ids[i - 1] < ids[i])) {
            throw Error(ErrorKind::MalformedRow, kModule, "pair table ids must be sorted and unique");
        }
    }
    for (auto& e : entries) {
        if (e.a == e.b) {
            throw Error(ErrorKind::MalformedRow, kModule, "self-pair for '" + ids.at(e.a) + "'");
        }
        if (e.a >= ids.size() || e.b >= ids.size()) {
            throw Error(ErrorKind::MalformedRow, kModule, "pair index out of range");
        }
        if (e.a > e.b) std::swap(e.a, e.b);
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].a == entries[i - 1].a && entries[i].b == entries[i - 1].b) {
            throw Error(ErrorKind::DuplicatePair, kModule,
                        "pair (" + ids[entries[i].a] + ", " + ids[entries[i].b] +
                            ") appears twice");
        }
    }
    // Compact to referenced ids; remapping is monotone so order is preserved.
    std::vector<char> used(ids.size(), 0);
    for (const auto& e : entries) used[e.a] = used[e.b] = 1;
    std::vector<std::uint32_t> remap(ids.size(), 0);
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (used[i]) {
            remap[i] = next++;
            ids_.push_back(std::move(ids[i]));
        }
    }
    for (auto& e : entries) {
        e.a = remap[e.a];
        e.b = remap[e.b];
    }
    entries_ = std::move(entries);
    validate_range();
}

PairValueTable PairValueTable::from_triples(
    std::vector<std::tuple<std::string, std::string, double>> triples,
    std::optional<ValueRange> range) {
    std::vector<std::string> ids;
    ids.reserve(triples.size() * 2);
    for (const auto& [a, b, v] : triples) {
        ids.push_back(a);
        ids.push_back(b);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto index = [&](const std::string& id) {
        return static_cast<std::uint32_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    std::vector<Entry> entries;
    entries.reserve(triples.size());
    for (const auto& [a, b, v] : triples) {
        entries.push_back(Entry{index(a), index(b), v});
    }
    return PairValueTable(std::move(ids), std::move(entries), range);
}

std::optional<double> PairValueTable::find(std::string_view a, std::string_view b) const {
    if (b < a) std::swap(a, b);
    auto ia = std::lower_bound(ids_.begin(), ids_.end(), a);
    auto ib = std::lower_bound(ids_.begin(), ids_.end(), b);
    if (ia == ids_.end() || *ia != a || ib == ids_.end() || *ib != b) return std::nullopt;
    const Entry key{static_cast<std::uint32_t>(ia - ids_.begin()),
                    static_cast<std::uint32_t>(ib - ids_.begin()), 0.0};
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                               [](const Entry& x, const Entry& y) {
                                   return x.a != y.a ? x.a < y.a : x.b < y.b;
                               });
    if (it == entries_.end() || it->a != key.a || it->b != key.b) return std::nullopt;
    return it->value;
}

void PairValueTable::validate_range() const {
    if (!range_) return;
    for (const auto& e : entries_) {
        if (!range_->contains(e.value)) {
            throw Error(ErrorKind::ValueOutOfRange, kModule,
                        "value " + util::format_double(e.value) + " for (" + ids_[e.a] + ", " +
                            ids_[e.b] + ") outside [" + util::format_double(range_->low) + ", " +
                            util::format_double(range_->high) + "]");
        }
    }
}

namespace ingest {

// ---------------------------------------------------------------------------
// Languages

LanguageTable load_languages(const std::filesystem::path& path, Diagnostics*) {
    const auto text = util::read_table(path, kModule);
    const auto c_id = require_column(text, "id", path);
    const auto c_name = text.column("name");
    const auto c_family = text.column("family");
    const auto c_genus = text.column("genus");
    const auto c_parent = text.column("parent");
    const auto c_branch = text.column("branch");
    const auto c_macro = text.column("macroarea");
    const auto c_area = text.column("area");
    const auto c_lat = text.column("latitude");
    const auto c_lon = text.column("longitude");
    const auto c_class = text.column("classification");

    LanguageTable table;
    table.reserve(text.rows.size());
    std::unordered_map<std::string, std::size_t> seen;
    for (const auto& row : text.rows) {
        require_width(row, text.header.size());
        LanguageRecord rec;
        rec.id = util::trim(row.cells[c_id]);
        if (rec.id.empty()) fail(ErrorKind::MalformedRow, "empty id", row.line);
        if (auto [it, inserted] = seen.emplace(rec.id, row.line); !inserted) {
            fail(ErrorKind::DuplicateId,
                 "id '" + rec.id + "' already defined on line " + std::to_string(it->second),
                 row.line);
        }
        rec.name = util::trim(cell(row, c_name));
        rec.family = util::trim(cell(row, c_family));
        rec.genus = util::trim(cell(row, c_genus));
        rec.parent = util::trim(cell(row, c_parent));
        rec.branch = util::trim(cell(row, c_branch));
        rec.macroarea = util::trim(cell(row, c_macro));
        rec.area = util::trim(cell(row, c_area));
        rec.latitude = optional_number(cell(row, c_lat), "latitude", row.line);
        rec.longitude = optional_number(cell(row, c_lon), "longitude", row.line);
        if (rec.latitude.has_value() != rec.longitude.has_value()) {
            fail(ErrorKind::CoordinateOutOfRange, "latitude and longitude must both be present",
                 row.line);
        }
        if (rec.latitude && (*rec.latitude < -90.0 || *rec.latitude > 90.0)) {
            fail(ErrorKind::CoordinateOutOfRange,
                 "latitude " + util::format_double(*rec.latitude) + " outside [-90, 90]", row.line);
        }
        if (rec.longitude && (*rec.longitude < -180.0 || *rec.longitude > 180.0)) {
            fail(ErrorKind::CoordinateOutOfRange,
                 "longitude " + util::format_double(*rec.longitude) + " outside [-180, 180]",
                 row.line);
        }
        const auto path_text = util::trim(cell(row, c_class));
        if (!path_text.empty()) {
            for (auto& node : util::split(path_text, '/')) {
                auto n = util::trim(node);
                if (n.empty()) fail(ErrorKind::MalformedRow, "empty classification node", row.line);
                rec.classification.push_back(std::move(n));
            }
        }
        table.push_back(std::move(rec));
    }
    return table;
}

void write_languages(const std::filesystem::path& path, const LanguageTable& table) {
    const char d = util::delimiter_for(path);
    std::string out;
    for (const char* h : {"id", "name", "family", "genus", "parent", "branch", "macroarea", "area",
                          "latitude", "longitude"}) {
        out += h;
        out += d;
    }
    out += "classification\n";
    for (const auto& r : table) {
        for (const auto* f : {&r.id, &r.name, &r.family, &r.genus, &r.parent, &r.branch,
                              &r.macroarea, &r.area}) {
            out += *f;
            out += d;
        }
        out += opt_to_text(r.latitude);
        out += d;
        out += opt_to_text(r.longitude);
        out += d;
        out += join(r.classification, '/');
        out += '\n';
    }
    util::write_text_file(path, out, kModule);
}

const LanguageRecord* find_language(const LanguageTable& table, std::string_view id) {
    for (const auto& r : table) {
        if (r.id == id) return &r;
    }
    return nullptr;
}

// ---------------------------------------------------------------------------
// Colexifications

ColexTable load_colex(const std::filesystem::path& path, Diagnostics* diag) {
    const auto text = util::read_table(path, kModule);
    const auto c_a = require_column(text, "concept_a", path);
    const auto c_b = require_column(text, "concept_b", path);
    const auto c_lang = require_column(text, "language", path);
    const auto c_freq = require_column(text, "frequency", path);
    const auto c_forms = text.column("forms");

    ColexTable table;
    std::map<std::tuple<std::string, std::string, std::string>, std::size_t> index;
    for (const auto& row : text.rows) {
        // A trailing empty forms column may be omitted.
        if (!(c_forms && row.cells.size() + 1 == text.header.size() &&
              *c_forms == text.header.size() - 1)) {
            require_width(row, text.header.size());
        }
        ColexRecord rec;
        rec.concept_a = util::trim(row.cells[c_a]);
        rec.concept_b = util::trim(row.cells[c_b]);
        rec.language = util::trim(row.cells[c_lang]);
        if (rec.concept_a.empty() || rec.concept_b.empty() || rec.language.empty()) {
            fail(ErrorKind::MalformedRow, "empty concept or language", row.line);
        }
        if (rec.concept_a == rec.concept_b) {
            fail(ErrorKind::SelfColexification, "concept '" + rec.concept_a + "' paired with itself",
                 row.line);
        }
        if (rec.concept_b < rec.concept_a) std::swap(rec.concept_a, rec.concept_b);
        auto freq = util::parse_int(row.cells[c_freq]);
        if (!freq) {
            fail(ErrorKind::MalformedRow, "invalid frequency '" + row.cells[c_freq] + "'", row.line);
        }
        if (*freq < 0) {
            fail(ErrorKind::NegativeFrequency, "frequency " + std::to_string(*freq), row.line);
        }
        rec.frequency = static_cast<std::uint64_t>(*freq);
        rec.forms = parse_forms(cell(row, c_forms), row.line);
        if (!rec.forms.empty()) {
            std::uint64_t sum = 0;
            for (const auto& f : rec.forms) sum += f.count;
            if (sum != rec.frequency) {
                fail(ErrorKind::MalformedForms,
                     "form counts sum to " + std::to_string(sum) + " but frequency is " +
                         std::to_string(rec.frequency),
                     row.line);
            }
        }
        auto key = std::make_tuple(rec.concept_a, rec.concept_b, rec.language);
        if (auto it = index.find(key); it != index.end()) {
            auto& prev = table[it->second];
            if (diag) {
                diag->warn("ingest: line " + std::to_string(row.line) + ": duplicate (" +
                           rec.concept_a + ", " + rec.concept_b + ", " + rec.language +
                           ") summed");
            }
            // Forms stay consistent only if both rows list them.
            const bool keep_forms = !prev.forms.empty() && !rec.forms.empty();
            prev.frequency += rec.frequency;
            if (keep_forms) {
                merge_forms(prev.forms, rec.forms);
            } else {
                prev.forms.clear();
            }
            continue;
        }
        index.emplace(std::move(key), table.size());
        table.push_back(std::move(rec));
    }
    return table;
}

void write_colex(const std::filesystem::path& path, const ColexTable& table) {
    const char d = util::delimiter_for(path);
    std::string out = "concept_a";
    out += d;
    out += "concept_b";
    out += d;
    out += "language";
    out += d;
    out += "frequency";
    out += d;
    out += "forms\n";
    for (const auto& r : table) {
        out += r.concept_a;
        out += d;
        out += r.concept_b;
        out += d;
        out += r.language;
        out += d;
        out += std::to_string(r.frequency);
        out += d;
        for (std::size_t i = 0; i < r.forms.size(); ++i) {
            if (i) out += ';';
            out += r.forms[i].form;
            out += ':';
            out += std::to_string(r.forms[i].count);
        }
        out += '\n';
    }
    util::write_text_file(path, out, kModule);
}

// ---------------------------------------------------------------------------
// Ratings

RatingTable load_ratings(const std::filesystem::path& path, const RatingScales& scales,
                         Diagnostics* diag) {
    const auto text = util::read_table(path, kModule);
    const auto c_lemma = require_column(text, "lemma", path);
    const auto c_conc = text.column("concreteness");
    const auto c_val = text.column("valence");
    const auto c_aro = text.column("arousal");
    const auto c_dom = text.column("dominance");

    RatingTable table;
    std::set<std::string> seen;
    std::vector<std::string> problems;
    std::optional<std::size_t> first_bad_line;
    for (const auto& row : text.rows) {
        require_width(row, text.header.size());
        RatingRecord rec;
        rec.lemma = util::trim(row.cells[c_lemma]);
        if (rec.lemma.empty()) fail(ErrorKind::MalformedRow, "empty lemma", row.line);
        rec.concreteness = optional_number(cell(row, c_conc), "concreteness", row.line);
        rec.valence = optional_number(cell(row, c_val), "valence", row.line);
        rec.arousal = optional_number(cell(row, c_aro), "arousal", row.line);
        rec.dominance = optional_number(cell(row, c_dom), "dominance", row.line);

        auto check = [&](const std::optional<double>& v, const ValueRange& r, const char* what) {
            if (v && !r.contains(*v)) {
                problems.push_back("line " + std::to_string(row.line) + ": " + what + " " +
                                   util::format_double(*v) + " outside [" +
                                   util::format_double(r.low) + ", " + util::format_double(r.high) +
                                   "]");
                if (!first_bad_line) first_bad_line = row.line;
            }
        };
        check(rec.concreteness, scales.concreteness, "concreteness");
        check(rec.valence, scales.affect, "valence");
        check(rec.arousal, scales.affect, "arousal");
        check(rec.dominance, scales.affect, "dominance");

        if (!seen.insert(rec.lemma).second) {
            if (diag) {
                diag->warn("ingest: line " + std::to_string(row.line) + ": duplicate lemma '" +
                           rec.lemma + "' ignored");
            }
            continue;
        }
        table.push_back(std::move(rec));
    }
    if (!problems.empty()) {
        std::string msg;
        for (std::size_t i = 0; i < problems.size(); ++i) {
            if (i) msg += "; ";
            msg += problems[i];
        }
        fail(ErrorKind::RatingOutOfScale, msg, *first_bad_line);
    }
    return table;
}

void write_ratings(const std::filesystem::path& path, const RatingTable& table) {
    const char d = util::delimiter_for(path);
    std::string out = "lemma";
    for (const char* h : {"concreteness", "valence", "arousal", "dominance"}) {
        out += d;
        out += h;
    }
    out += '\n';
    for (const auto& r : table) {
        out += r.lemma;
        for (const auto* v : {&r.concreteness, &r.valence, &r.arousal, &r.dominance}) {
            out += d;
            out += opt_to_text(*v);
        }
        out += '\n';
    }
    util::write_text_file(path, out, kModule);
}

// ---------------------------------------------------------------------------
// Wordlists

WordlistTable load_wordlists(const std::filesystem::path& path, Diagnostics*) {
    const auto text = util::read_table(path, kModule);
    const auto c_lang = require_column(text, "language", path);
    const auto c_concept = require_column(text, "concept", path);
    const auto c_trans = require_column(text, "transcription", path);
    WordlistTable table;
    table.reserve(text.rows.size());
    for (const auto& row : text.rows) {
        require_width(row, text.header.size());
        WordlistEntry e{util::trim(row.cells[c_lang]), util::trim(row.cells[c_concept]),
                        util::trim(row.cells[c_trans])};
        if (e.language.empty() || e.concept_name.empty()) {
            fail(ErrorKind::MalformedRow, "empty language or concept", row.line);
        }
        if (e.transcription.empty()) {
            fail(ErrorKind::MalformedRow, "empty transcription", row.line);
        }
        table.push_back(std::move(e));
    }
    return table;
}

void write_wordlists(const std::filesystem::path& path, const WordlistTable& table) {
    const char d = util::delimiter_for(path);
    std::string out = "language";
    out += d;
    out += "concept";
    out += d;
    out += "transcription\n";
    for (const auto& e : table) {
        out += e.language;
        out += d;
        out += e.concept_name;
        out += d;
        out += e.transcription;
        out += '\n';
    }
    util::write_text_file(path, out, kModule);
}

// ---------------------------------------------------------------------------
// Pair matrices

namespace {

constexpr double kSymmetryTolerance = 1e-9;

void check_range(const std::optional<ValueRange>& range, double v, std::size_t line) {
    if (range && !range->contains(v)) {
        fail(ErrorKind::ValueOutOfRange,
             "value " + util::format_double(v) + " outside [" + util::format_double(range->low) +
                 ", " + util::format_double(range->high) + "]",
             line);
    }
}

PairValueTable load_long(const util::TextTable& text, std::optional<ValueRange> range,
                         Diagnostics* diag) {
    std::map<std::pair<std::string, std::string>, std::pair<double, std::size_t>> values;
    for (const auto& row : text.rows) {
        require_width(row, 3);
        auto a = util::trim(row.cells[0]);
        auto b = util::trim(row.cells[1]);
        if (a.empty() || b.empty()) fail(ErrorKind::MalformedRow, "empty id", row.line);
        if (a == b) fail(ErrorKind::MalformedRow, "self-pair for '" + a + "'", row.line);
        auto v = util::parse_double(row.cells[2]);
        if (!v || !std::isfinite(*v)) {
            fail(ErrorKind::MalformedRow, "invalid value '" + row.cells[2] + "'", row.line);
        }
        check_range(range, *v, row.line);
        if (b < a) std::swap(a, b);
        auto [it, inserted] = values.emplace(std::make_pair(a, b), std::make_pair(*v, row.line));
        if (!inserted) {
            if (it->second.first != *v) {
                fail(ErrorKind::DuplicatePair,
                     "pair (" + a + ", " + b + ") conflicts with line " +
                         std::to_string(it->second.second),
                     row.line);
            }
            if (diag) {
                diag->warn("ingest: line " + std::to_string(row.line) + ": repeated pair (" + a +
                           ", " + b + ")");
            }
        }
    }
    std::vector<std::tuple<std::string, std::string, double>> triples;
    triples.reserve(values.size());
    for (auto& [key, val] : values) triples.emplace_back(key.first, key.second, val.first);
    return PairValueTable::from_triples(std::move(triples), range);
}

PairValueTable load_square(const util::TextTable& text, std::optional<ValueRange> range) {
    std::vector<std::string> col_ids(text.header.begin() + 1, text.header.end());
    const std::size_t n = col_ids.size();
    if (text.rows.size() != n) {
        fail(ErrorKind::MalformedRow,
             "square matrix has " + std::to_string(n) + " columns but " +
                 std::to_string(text.rows.size()) + " rows",
             text.rows.empty() ? 1 : text.rows.back().line);
    }
    std::map<std::string, std::size_t> col_index;
    for (std::size_t j = 0; j < n; ++j) {
        if (col_ids[j].empty()) fail(ErrorKind::MalformedRow, "empty id in header", 1);
        if (!col_index.emplace(col_ids[j], j).second) {
            fail(ErrorKind::DuplicateId, "id '" + col_ids[j] + "' repeated in header", 1);
        }
    }
    // cells[i][j] in header-column order, with row i mapped to its column.
    std::vector<std::vector<std::optional<double>>> m(n, std::vector<std::optional<double>>(n));
    std::vector<std::size_t> row_line(n, 0);
    std::vector<char> row_seen(n, 0);
    for (const auto& row : text.rows) {
        require_width(row, n + 1);
        const auto id = util::trim(row.cells[0]);
        auto it = col_index.find(id);
        if (it == col_index.end()) {
            fail(ErrorKind::MalformedRow, "row id '" + id + "' not in header", row.line);
        }
        const auto i = it->second;
        if (row_seen[i]) fail(ErrorKind::DuplicateId, "row id '" + id + "' repeated", row.line);
        row_seen[i] = 1;
        row_line[i] = row.line;
        for (std::size_t j = 0; j < n; ++j) {
            const auto t = util::trim(row.cells[j + 1]);
            if (t.empty() || t == "NA") continue;
            auto v = util::parse_double(t);
            if (!v || !std::isfinite(*v)) {
                fail(ErrorKind::MalformedRow, "invalid value '" + t + "'", row.line);
            }
            m[i][j] = *v;
        }
    }
    std::vector<std::tuple<std::string, std::string, double>> triples;
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i][i] && std::abs(*m[i][i]) > kSymmetryTolerance) {
            fail(ErrorKind::AsymmetricMatrix, "nonzero diagonal for '" + col_ids[i] + "'",
                 row_line[i]);
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& x = m[i][j];
            const auto& y = m[j][i];
            if (x.has_value() != y.has_value() ||
                (x && std::abs(*x - *y) > kSymmetryTolerance)) {
                fail(ErrorKind::AsymmetricMatrix,
                     "M[" + col_ids[i] + "][" + col_ids[j] + "] differs from M[" + col_ids[j] +
                         "][" + col_ids[i] + "]",
                     std::max(row_line[i], row_line[j]));
            }
            if (!x) continue;
            // Stored value is the one read in canonical (smaller id first) orientation.
            const bool i_first = col_ids[i] < col_ids[j];
            const double v = i_first ? *x : *y;
            check_range(range, v, i_first ? row_line[i] : row_line[j]);
            triples.emplace_back(col_ids[i], col_ids[j], v);
        }
    }
    return PairValueTable::from_triples(std::move(triples), range);
}

}  // namespace

PairValueTable load_pair_matrix(const std::filesystem::path& path, std::optional<ValueRange> range,
                                Diagnostics* diag) {
    const auto text = util::read_table(path, kModule);
    const bool is_long = text.header.size() == 3 && text.header[0] == "id_a" &&
                         text.header[1] == "id_b" && text.header[2] == "value";
    return is_long ? load_long(text, range, diag) : load_square(text, range);
}

std::string pair_table_to_text(const PairValueTable& table, char delimiter) {
    std::string out = "id_a";
    out += delimiter;
    out += "id_b";
    out += delimiter;
    out += "value\n";
    for (const auto& e : table.entries()) {
        out += table.id(e.a);
        out += delimiter;
        out += table.id(e.b);
        out += delimiter;
        out += util::format_double(e.value);
        out += '\n';
    }
    return out;
}

void write_pair_table(const std::filesystem::path& path, const PairValueTable& table) {
    util::write_text_file(path, pair_table_to_text(table, util::delimiter_for(path)), kModule);
}

}  // namespace ingest
}  // namespace langgraph
