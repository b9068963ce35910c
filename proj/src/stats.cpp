#include "langgraph/stats.hpp"

#include "langgraph/error.hpp"

#include <Eigen/Dense>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

namespace langgraph::stats {

namespace {

constexpr std::string_view kModule = "stats";
constexpr double kRankThreshold = 1e-10;
const double kNormal975 = boost::math::quantile(boost::math::normal(), 0.975);

double two_sided_t_p(double t, double df) {
    if (std::isinf(t)) return 0.0;
    if (std::isnan(t)) return 1.0;
    boost::math::students_t dist(df);
    return std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))), 0.0, 1.0);
}

double t_quantile_975(double df) {
    boost::math::students_t dist(df);
    return boost::math::quantile(dist, 0.975);
}

void require_attribute(const LanguageGraph& graph, Attribute a) {
    if (!graph.has_attribute(a)) {
        throw Error(ErrorKind::UnknownAttribute, kModule,
                    "graph has no '" + std::string(attribute_name(a)) + "' attribute");
    }
}

bool complete(const LanguageGraph& graph, std::size_t e, std::span<const Attribute> attrs) {
    for (auto a : attrs) {
        if (std::isnan(graph.column(a)[e])) return false;
    }
    return true;
}

// Uniform integer in [0, bound) from raw 64-bit draws; portable across
// standard libraries unlike std::uniform_int_distribution.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = 0;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

std::vector<std::string> group_order(const std::set<std::string>& names, GroupKey key) {
    std::vector<std::string> out;
    if (key == GroupKey::Relatedness) {
        for (auto level : kRelatednessLevels) {
            if (names.count(std::string(to_string(level)))) out.emplace_back(to_string(level));
        }
        return out;
    }
    for (const auto& n : names) {
        if (n != "cross") out.push_back(n);
    }
    if (names.count("cross")) out.emplace_back("cross");
    return out;
}

}  // namespace

std::optional<GroupKey> parse_group_key(std::string_view text) {
    if (text == "macroarea") return GroupKey::Macroarea;
    if (text == "cross") return GroupKey::Cross;
    if (text == "relatedness") return GroupKey::Relatedness;
    return std::nullopt;
}

std::optional<std::string> group_of(const LanguageGraph& graph, std::size_t edge, GroupKey key) {
    if (key == GroupKey::Relatedness) return std::string(to_string(graph.relatedness(edge)));
    const auto k = graph.key(edge);
    const auto& ma = graph.nodes()[k.a].macroarea;
    const auto& mb = graph.nodes()[k.b].macroarea;
    if (ma.empty() || mb.empty()) return std::nullopt;
    if (ma != mb) return std::string("cross");
    if (key == GroupKey::Cross) return std::nullopt;
    return ma;
}

// ---------------------------------------------------------------------------
// Correlation

CorrelationResult pearson(std::span<const double> x, std::span<const double> y, std::string group) {
    if (x.size() != y.size()) {
        throw Error(ErrorKind::LengthMismatch, kModule,
                    "series lengths " + std::to_string(x.size()) + " and " + std::to_string(y.size()));
    }
    const std::size_t n = x.size();
    if (n < 3) throw Error(ErrorKind::DegenerateSeries, kModule, "need at least 3 observations");
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw Error(ErrorKind::DegenerateSeries, kModule, "series has zero variance");
    }
    CorrelationResult out;
    out.group = std::move(group);
    out.n = n;
    out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    const double df = static_cast<double>(n - 2);
    const double denom = 1.0 - out.r * out.r;
    const double t = denom <= 0.0 ? std::copysign(std::numeric_limits<double>::infinity(), out.r)
                                  : out.r * std::sqrt(df / denom);
    out.p_value = two_sided_t_p(t, df);
    if (std::abs(out.r) == 1.0) {
        out.ci_low = out.ci_high = out.r;
    } else if (n > 3) {
        const double z = std::atanh(out.r);
        const double half = kNormal975 / std::sqrt(static_cast<double>(n - 3));
        out.ci_low = std::tanh(z - half);
        out.ci_high = std::tanh(z + half);
    }
    return out;
}

std::vector<CorrelationResult> group_pearson(const LanguageGraph& graph, Attribute x, Attribute y,
                                             GroupKey key, Diagnostics* diag) {
    require_attribute(graph, x);
    require_attribute(graph, y);
    const auto cx = graph.column(x);
    const auto cy = graph.column(y);
    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> groups;
    for (std::size_t e = 0; e < graph.edge_count(); ++e) {
        if (std::isnan(cx[e]) || std::isnan(cy[e])) continue;
        auto g = group_of(graph, e, key);
        if (!g) continue;
        auto& [gx, gy] = groups[*g];
        gx.push_back(cx[e]);
        gy.push_back(cy[e]);
    }
    std::set<std::string> names;
    for (const auto& [name, _] : groups) names.insert(name);
    std::vector<CorrelationResult> out;
    for (const auto& name : group_order(names, key)) {
        const auto& [gx, gy] = groups.at(name);
        if (gx.size() < 3) {
            if (diag) diag->warn("stats: group '" + name + "' has n=" + std::to_string(gx.size()) + ", omitted");
            continue;
        }
        try {
            out.push_back(pearson(gx, gy, name));
        } catch (const Error& ex) {
            if (ex.kind() != ErrorKind::DegenerateSeries) throw;
            if (diag) diag->warn("stats: group '" + name + "' omitted: " + ex.what());
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Regression

OlsResult ols(const std::vector<std::vector<double>>& predictors, std::span<const double> y,
              const std::vector<std::string>& names) {
    const std::size_t n = y.size();
    const std::size_t p = predictors.size();
    for (const auto& col : predictors) {
        if (col.size() != n) throw Error(ErrorKind::LengthMismatch, kModule, "predictor length differs from y");
    }
    if (n <= p + 1) {
        throw Error(ErrorKind::RankDeficient, kModule,
                    std::to_string(n) + " observations for " + std::to_string(p + 1) + " coefficients");
    }
    Eigen::MatrixXd X(n, p + 1);
    Eigen::VectorXd Y(n);
    for (std::size_t i = 0; i < n; ++i) {
        X(i, 0) = 1.0;
        for (std::size_t j = 0; j < p; ++j) X(i, j + 1) = predictors[j][i];
        Y(i) = y[i];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(kRankThreshold);
    if (qr.rank() < static_cast<Eigen::Index>(p + 1)) {
        throw Error(ErrorKind::RankDeficient, kModule, "design matrix is rank deficient");
    }
    const Eigen::VectorXd beta = qr.solve(Y);
    const Eigen::VectorXd resid = Y - X * beta;
    const double df = static_cast<double>(n - p - 1);
    const double sigma2 = resid.squaredNorm() / df;

    // (X'X)^-1 = P R^-1 R^-T P'
    const auto k = static_cast<Eigen::Index>(p + 1);
    const Eigen::MatrixXd R = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd Rinv =
        R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    const Eigen::MatrixXd inner = Rinv * Rinv.transpose();
    const auto& perm = qr.colsPermutation();
    const Eigen::MatrixXd cov = perm * inner * perm.transpose();

    const double tcrit = t_quantile_975(df);
    OlsResult out;
    out.n = n;
    for (Eigen::Index j = 0; j < k; ++j) {
        Coefficient c;
        if (j == 0) {
            c.name = "intercept";
        } else {
            const auto idx = static_cast<std::size_t>(j - 1);
            c.name = idx < names.size() ? names[idx] : "x" + std::to_string(j);
        }
        c.estimate = beta(j);
        c.std_error = std::sqrt(std::max(0.0, sigma2 * cov(j, j)));
        if (c.std_error > 0.0) {
            c.t = c.estimate / c.std_error;
        } else {
            c.t = c.estimate == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), c.estimate);
        }
        c.p_value = two_sided_t_p(c.t, df);
        c.ci_low = c.estimate - tcrit * c.std_error;
        c.ci_high = c.estimate + tcrit * c.std_error;
        out.coefficients.push_back(std::move(c));
    }
    out.residuals.assign(resid.data(), resid.data() + resid.size());
    const double my = Y.mean();
    const double tss = (Y.array() - my).square().sum();
    out.r_squared = tss > 0.0 ? 1.0 - resid.squaredNorm() / tss : 1.0;
    return out;
}

std::vector<BetaResult> standardized_beta(const LanguageGraph& graph, Attribute target,
                                          Attribute predictor, const std::vector<Attribute>& controls,
                                          bool by_relatedness, Diagnostics* diag) {
    std::vector<Attribute> attrs{target, predictor};
    attrs.insert(attrs.end(), controls.begin(), controls.end());
    for (auto a : attrs) require_attribute(graph, a);

    std::vector<std::string> control_names;
    for (auto c : controls) control_names.emplace_back(attribute_name(c));

    std::vector<std::pair<std::string, std::vector<std::size_t>>> groups;
    if (by_relatedness) {
        for (auto level : kRelatednessLevels) groups.emplace_back(std::string(to_string(level)), std::vector<std::size_t>{});
    } else {
        groups.emplace_back("all", std::vector<std::size_t>{});
    }
    for (std::size_t e = 0; e < graph.edge_count(); ++e) {
        if (!complete(graph, e, attrs)) continue;
        const std::size_t g = by_relatedness ? static_cast<std::size_t>(graph.relatedness(e)) : 0;
        groups[g].second.push_back(e);
    }

    // Predictor and controls may repeat the target; keep the design distinct
    // per attribute so self-regression stays well defined.
    std::vector<Attribute> design{predictor};
    for (auto c : controls) {
        if (std::find(design.begin(), design.end(), c) == design.end()) design.push_back(c);
    }

    auto zscore = [](std::vector<double>& v) {
        const double n = static_cast<double>(v.size());
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        const double sd = std::sqrt(ss / (n - 1.0));
        if (!(sd > 0.0)) return false;
        for (double& x : v) x = (x - mean) / sd;
        return true;
    };

    std::vector<BetaResult> out;
    std::vector<double> std_errors;
    std::string last_error;
    for (const auto& [name, edges] : groups) {
        const auto fail_group = [&](const std::string& why) {
            last_error = "group '" + name + "': " + why;
            if (diag) diag->warn("stats: " + last_error);
        };
        if (edges.size() <= design.size() + 1) {
            fail_group("n=" + std::to_string(edges.size()) + " is too small");
            continue;
        }
        std::vector<double> y;
        y.reserve(edges.size());
        for (auto e : edges) y.push_back(graph.column(target)[e]);
        std::vector<std::vector<double>> X;
        bool ok = zscore(y);
        for (auto a : design) {
            if (!ok) break;
            std::vector<double> col;
            col.reserve(edges.size());
            for (auto e : edges) col.push_back(graph.column(a)[e]);
            ok = zscore(col);
            X.push_back(std::move(col));
        }
        if (!ok) {
            fail_group("an attribute is constant");
            continue;
        }
        OlsResult fit;
        try {
            fit = ols(X, y);
        } catch (const Error& ex) {
            if (ex.kind() != ErrorKind::RankDeficient) throw;
            fail_group(ex.what());
            continue;
        }
        const auto& c = fit.coefficients.at(1);
        BetaResult r;
        r.target = std::string(attribute_name(target));
        r.predictor = std::string(attribute_name(predictor));
        r.controls = control_names;
        r.group = name;
        r.beta = c.estimate;
        r.ci95 = {c.ci_low, c.ci_high};
        r.p_value = c.p_value;
        r.n = fit.n;
        out.push_back(std::move(r));
        std_errors.push_back(c.std_error);
    }
    if (out.empty()) {
        if (!by_relatedness && !last_error.empty()) {
            throw Error(ErrorKind::RankDeficient, kModule, last_error);
        }
        throw Error(ErrorKind::EmptyGroup, kModule,
                    last_error.empty() ? "no edge has all requested attributes" : last_error);
    }
    if (by_relatedness) {
        // Mean of group betas; its SE combines group SEs as independent.
        const boost::math::normal normal;
        double sum = 0.0, var = 0.0;
        std::size_t n = 0;
        for (std::size_t g = 0; g < out.size(); ++g) {
            sum += out[g].beta;
            var += std_errors[g] * std_errors[g];
            n += out[g].n;
        }
        const double k = static_cast<double>(out.size());
        BetaResult mean;
        mean.target = out.front().target;
        mean.predictor = out.front().predictor;
        mean.controls = control_names;
        mean.group = "mean";
        mean.beta = sum / k;
        const double se = std::sqrt(var) / k;
        mean.ci95 = {mean.beta - kNormal975 * se, mean.beta + kNormal975 * se};
        if (se > 0.0) {
            mean.p_value = std::clamp(2.0 * boost::math::cdf(boost::math::complement(normal, std::abs(mean.beta / se))), 0.0, 1.0);
        } else {
            mean.p_value = mean.beta == 0.0 ? 1.0 : 0.0;
        }
        mean.n = n;
        out.push_back(std::move(mean));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sampling

std::vector<std::size_t> allocate_quotas(const std::vector<std::size_t>& sizes, std::size_t total) {
    const std::uint64_t population = std::accumulate(sizes.begin(), sizes.end(), std::uint64_t{0});
    if (total > population) {
        throw Error(ErrorKind::SampleTooLarge, kModule,
                    "sample of " + std::to_string(total) + " exceeds population " + std::to_string(population));
    }
    const std::size_t g = sizes.size();
    std::vector<std::size_t> quota(g, 0);
    if (total == 0) return quota;
    if (population >= (std::uint64_t{1} << 32)) {
        throw Error(ErrorKind::SampleTooLarge, kModule, "population too large for exact quota arithmetic");
    }
    // Exact shares total * size / population as quotient and remainder.
    std::vector<std::uint64_t> remainder(g, 0);
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < g; ++i) {
        const std::uint64_t prod = static_cast<std::uint64_t>(total) * sizes[i];
        quota[i] = static_cast<std::size_t>(prod / population);
        remainder[i] = static_cast<std::uint64_t>(prod % population);
        assigned += quota[i];
    }
    std::vector<std::size_t> order(g);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    // Fractional parts sum to the shortfall, so one pass suffices.
    for (std::size_t k = 0; assigned < total; ++k) {
        ++quota[order[k]];
        ++assigned;
    }
    std::size_t nonempty = 0;
    for (auto s : sizes) nonempty += s > 0 ? 1 : 0;
    if (total >= nonempty) {
        for (std::size_t i = 0; i < g; ++i) {
            if (sizes[i] == 0 || quota[i] > 0) continue;
            // Take one from the group most above its exact share.
            std::optional<std::size_t> donor;
            long double best = -1e300L;
            for (std::size_t j = 0; j < g; ++j) {
                if (quota[j] <= 1) continue;
                const long double excess = static_cast<long double>(quota[j]) -
                                           static_cast<long double>(total) * sizes[j] / population;
                if (excess > best) {
                    best = excess;
                    donor = j;
                }
            }
            if (!donor) break;
            --quota[*donor];
            quota[i] = 1;
        }
    }
    return quota;
}

std::vector<std::size_t> stratified_sample(const LanguageGraph& graph, GroupKey key, std::size_t total_n,
                                           std::uint64_t seed, const std::vector<Attribute>& required) {
    for (auto a : required) require_attribute(graph, a);
    std::map<std::string, std::vector<std::size_t>> members;
    for (std::size_t e = 0; e < graph.edge_count(); ++e) {
        if (!complete(graph, e, required)) continue;
        auto g = group_of(graph, e, key);
        if (g) members[*g].push_back(e);
    }
    if (members.empty()) throw Error(ErrorKind::EmptyGroup, kModule, "no edge falls into any group");
    std::set<std::string> names;
    for (const auto& [n, _] : members) names.insert(n);
    const auto order = group_order(names, key);
    std::vector<std::size_t> sizes;
    for (const auto& n : order) sizes.push_back(members.at(n).size());
    const auto quota = allocate_quotas(sizes, total_n);

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> out;
    out.reserve(total_n);
    for (std::size_t g = 0; g < order.size(); ++g) {
        auto pool = members.at(order[g]);
        // Partial Fisher-Yates: the first quota[g] slots are the sample.
        for (std::size_t k = 0; k < quota[g]; ++k) {
            const auto pick = k + uniform_below(rng, pool.size() - k);
            std::swap(pool[k], pool[pick]);
            out.push_back(pool[k]);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Communities

namespace {

struct WeightedGraph {
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;  // no self entries
    std::vector<double> self;                                          // loop weight, counted once

    std::size_t size() const { return adj.size(); }
};

// One round of local moving; returns community per node, labels are node
// indices of the current level.
std::vector<std::uint32_t> local_moving(const WeightedGraph& g, bool& moved) {
    const std::size_t n = g.size();
    std::vector<std::uint32_t> comm(n);
    std::iota(comm.begin(), comm.end(), 0u);
    std::vector<double> k(n, 0.0);
    double m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [j, w] : g.adj[i]) k[i] += w;
        k[i] += 2.0 * g.self[i];
        m2 += k[i];
    }
    moved = false;
    if (m2 <= 0.0) return comm;
    std::vector<double> tot = k;
    std::vector<double> link(n, 0.0);
    std::vector<std::uint32_t> touched;
    const double eps = 1e-12 * m2;
    for (int pass = 0; pass < 1000; ++pass) {
        bool any = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (k[i] == 0.0) continue;
            const auto own = comm[i];
            tot[own] -= k[i];
            touched.clear();
            touched.push_back(own);
            for (const auto& [j, w] : g.adj[i]) {
                const auto c = comm[j];
                if (link[c] == 0.0 && std::find(touched.begin(), touched.end(), c) == touched.end()) {
                    touched.push_back(c);
                }
                link[c] += w;
            }
            std::sort(touched.begin(), touched.end());
            auto gain = [&](std::uint32_t c) { return link[c] - tot[c] * k[i] / m2; };
            const double stay = gain(own);
            std::uint32_t best = own;
            double best_gain = stay;
            for (auto c : touched) {
                const double gc = gain(c);
                if (gc > best_gain + eps || (c < best && std::abs(gc - best_gain) <= eps && gc > stay + eps)) {
                    best = c;
                    best_gain = gc;
                }
            }
            for (auto c : touched) link[c] = 0.0;
            tot[best] += k[i];
            if (best != own) {
                comm[i] = best;
                any = true;
                moved = true;
            }
        }
        if (!any) break;
    }
    return comm;
}

}  // namespace

Partition detect_communities(const std::vector<std::string>& nodes, const std::vector<SimilarityEdge>& edges) {
    std::vector<std::string> ids = nodes;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto index_of = [&](const std::string& id) -> std::uint32_t {
        auto it = std::lower_bound(ids.begin(), ids.end(), id);
        if (it == ids.end() || *it != id) {
            throw Error(ErrorKind::UnknownLanguageId, kModule, "edge references unknown node '" + id + "'");
        }
        return static_cast<std::uint32_t>(it - ids.begin());
    };

    const std::size_t n = ids.size();
    std::vector<std::map<std::uint32_t, double>> acc(n);
    for (const auto& e : edges) {
        const double w = 1.0 - e.distance;
        const auto a = index_of(e.a);
        const auto b = index_of(e.b);
        if (a == b || !(w > 0.0)) continue;
        acc[a][b] += w;
        acc[b][a] += w;
    }
    WeightedGraph g;
    g.adj.resize(n);
    g.self.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) g.adj[i].assign(acc[i].begin(), acc[i].end());

    std::vector<std::uint32_t> membership(n);
    std::iota(membership.begin(), membership.end(), 0u);
    while (true) {
        bool moved = false;
        const auto comm = local_moving(g, moved);
        if (!moved) break;
        // Renumber communities by first appearance in node order.
        std::vector<std::int64_t> renum(g.size(), -1);
        std::uint32_t next = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (renum[comm[i]] < 0) renum[comm[i]] = next++;
        }
        for (auto& m : membership) m = static_cast<std::uint32_t>(renum[comm[m]]);
        WeightedGraph h;
        h.adj.resize(next);
        h.self.assign(next, 0.0);
        std::vector<std::map<std::uint32_t, double>> hacc(next);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const auto ci = static_cast<std::uint32_t>(renum[comm[i]]);
            h.self[ci] += g.self[i];
            for (const auto& [j, w] : g.adj[i]) {
                const auto cj = static_cast<std::uint32_t>(renum[comm[j]]);
                if (ci == cj) {
                    if (i < j) h.self[ci] += w;
                } else {
                    hacc[ci][cj] += w;
                }
            }
        }
        for (std::size_t c = 0; c < next; ++c) h.adj[c].assign(hacc[c].begin(), hacc[c].end());
        g = std::move(h);
    }
    // Final labels by first appearance in id order.
    Partition out;
    std::map<std::uint32_t, std::uint32_t> relabel;
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, inserted] = relabel.emplace(membership[i], static_cast<std::uint32_t>(relabel.size()));
        out.emplace(ids[i], it->second);
    }
    return out;
}

double modularity(const Partition& partition, const std::vector<SimilarityEdge>& edges) {
    std::map<std::uint32_t, double> internal;
    std::map<std::uint32_t, double> degree;
    double m = 0.0;
    for (const auto& e : edges) {
        const double w = 1.0 - e.distance;
        if (!(w > 0.0) || e.a == e.b) continue;
        const auto ca = partition.at(e.a);
        const auto cb = partition.at(e.b);
        m += w;
        degree[ca] += w;
        degree[cb] += w;
        if (ca == cb) internal[ca] += w;
    }
    if (m == 0.0) return 0.0;
    double q = 0.0;
    for (const auto& [c, d] : degree) {
        const double in = internal.count(c) ? internal.at(c) : 0.0;
        q += in / m - (d / (2.0 * m)) * (d / (2.0 * m));
    }
    return q;
}

double adjusted_rand_index(const Partition& p1, const Partition& p2) {
    if (p1.size() != p2.size()) throw Error(ErrorKind::NodeSetMismatch, kModule, "partitions cover different node counts");
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> table;
    std::map<std::uint32_t, std::uint64_t> rows, cols;
    auto it1 = p1.begin();
    auto it2 = p2.begin();
    for (; it1 != p1.end(); ++it1, ++it2) {
        if (it1->first != it2->first) {
            throw Error(ErrorKind::NodeSetMismatch, kModule, "node '" + it1->first + "' missing from one partition");
        }
        ++table[{it1->second, it2->second}];
        ++rows[it1->second];
        ++cols[it2->second];
    }
    auto pairs = [](std::uint64_t x) { return x * (x > 0 ? x - 1 : 0) / 2; };
    std::uint64_t index = 0, a = 0, b = 0;
    for (const auto& [_, c] : table) index += pairs(c);
    for (const auto& [_, c] : rows) a += pairs(c);
    for (const auto& [_, c] : cols) b += pairs(c);
    const std::uint64_t total = pairs(p1.size());
    if (total == 0) return 1.0;
    const double expected = static_cast<double>(a) * static_cast<double>(b) / static_cast<double>(total);
    const double max_index = (static_cast<double>(a) + static_cast<double>(b)) / 2.0;
    if (max_index == expected) return 1.0;
    return (static_cast<double>(index) - expected) / (max_index - expected);
}

std::vector<FamilyAriReport> family_ari_report(const LanguageGraph& graph, const std::vector<Attribute>& sets,
                                               std::size_t top_k, Diagnostics* diag) {
    if (sets.size() < 2) throw Error(ErrorKind::InvalidConfig, kModule, "need at least two concept-set attributes");
    for (auto a : sets) require_attribute(graph, a);

    std::map<std::string, std::vector<std::string>> families;
    for (const auto& r : graph.nodes()) {
        if (!r.family.empty()) families[r.family].push_back(r.id);
    }
    std::vector<std::pair<std::string, std::size_t>> ranked;
    for (const auto& [f, ids] : families) ranked.emplace_back(f, ids.size());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& x, const auto& y) { return x.second > y.second; });
    if (ranked.size() > top_k) ranked.resize(top_k);

    std::map<std::string, std::size_t> selected;
    for (std::size_t i = 0; i < ranked.size(); ++i) selected.emplace(ranked[i].first, i);

    // edges[family][set]
    std::vector<std::vector<std::vector<SimilarityEdge>>> edges(ranked.size(),
                                                                std::vector<std::vector<SimilarityEdge>>(sets.size()));
    for (std::size_t e = 0; e < graph.edge_count(); ++e) {
        const auto k = graph.key(e);
        const auto& fa = graph.nodes()[k.a].family;
        if (fa.empty() || fa != graph.nodes()[k.b].family) continue;
        auto it = selected.find(fa);
        if (it == selected.end()) continue;
        for (std::size_t s = 0; s < sets.size(); ++s) {
            const double d = graph.column(sets[s])[e];
            if (std::isnan(d)) continue;
            edges[it->second][s].push_back({graph.id_a(e), graph.id_b(e), d});
        }
    }

    std::vector<FamilyAriReport> out;
    for (std::size_t f = 0; f < ranked.size(); ++f) {
        const auto& [family, count] = ranked[f];
        if (count < 4) {
            if (diag) {
                diag->warn("stats: InsufficientLanguages: family '" + family + "' has " + std::to_string(count) +
                           " languages, skipped");
            }
            continue;
        }
        FamilyAriReport rep;
        rep.family = family;
        rep.languages = count;
        for (auto a : sets) rep.sets.emplace_back(attribute_name(a));
        for (std::size_t s = 0; s < sets.size(); ++s) {
            rep.partitions.push_back(detect_communities(families.at(family), edges[f][s]));
        }
        rep.ari.assign(sets.size(), std::vector<double>(sets.size(), 1.0));
        for (std::size_t i = 0; i < sets.size(); ++i) {
            for (std::size_t j = i + 1; j < sets.size(); ++j) {
                rep.ari[i][j] = rep.ari[j][i] = adjusted_rand_index(rep.partitions[i], rep.partitions[j]);
            }
        }
        out.push_back(std::move(rep));
    }
    return out;
}

DistanceHistogram distance_histogram(const LanguageGraph& graph, Attribute attribute, std::size_t bins) {
    require_attribute(graph, attribute);
    if (bins == 0) throw Error(ErrorKind::InvalidConfig, kModule, "histogram needs at least one bin");
    DistanceHistogram h;
    h.attribute = attribute;
    h.bins = bins;
    for (auto& c : h.counts) c.assign(bins, 0);
    const auto col = graph.column(attribute);
    for (std::size_t e = 0; e < graph.edge_count(); ++e) {
        const double v = col[e];
        if (std::isnan(v)) continue;
        auto bin = static_cast<std::size_t>(std::floor(v * static_cast<double>(bins)));
        bin = std::min(bin, bins - 1);
        ++h.counts[static_cast<std::size_t>(graph.relatedness(e))][bin];
    }
    return h;
}

}  // namespace langgraph::stats
