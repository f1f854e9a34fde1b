#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "belyi/explore.hpp"
#include "belyi/graph_algo.hpp"
#include "belyi/metric.hpp"
#include "belyi/oracles.hpp"
#include "belyi/pairing.hpp"
#include "belyi/triangulation.hpp"

namespace belyi {

using json = nlohmann::json;

struct StudyConfig {
    std::vector<std::int32_t> n_values;
    std::int32_t trials = 100;
    std::uint64_t base_seed = 0;
    double epsilon = 0.1;
    double L = 10.0;
    ParamOverrides overrides;
    Sparsification sparsification = Sparsification::Dyadic;
    bool diameter_exact = false;
    std::int32_t sweep_sources = 6;
    std::int32_t threads = 1;
    std::string out_path;  // CSV; the JSON summary lands next to it

    ModelParams params() const { return derive_params(epsilon, L, overrides); }
};

// Formatted per-trial rows plus aggregate summary. Row strings are fixed at
// %.17g so emitted CSV round-trips to the exact doubles.
struct StudyReport {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    json summary;
};

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string csv_text(const StudyReport& rep) {
    std::string out;
    for (std::size_t i = 0; i < rep.header.size(); ++i) {
        if (i) out += ',';
        out += rep.header[i];
    }
    out += '\n';
    for (const auto& row : rep.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

inline void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out << content;
        if (!out.good()) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

inline void write_report(const StudyReport& rep, const std::string& out_path) {
    if (out_path.empty()) return;
    write_file_atomic(out_path, csv_text(rep));
    write_file_atomic(out_path + ".summary.json", rep.summary.dump(2) + "\n");
}

namespace detail {

// Runs fn(n, trial, seed) over the whole (n, trial) grid; results land in
// deterministic grid order regardless of the number of worker threads.
template <typename RowT, typename Fn>
std::vector<RowT> run_grid(const StudyConfig& cfg, Fn&& fn) {
    struct Task {
        std::int32_t n;
        std::int32_t trial;
    };
    std::vector<Task> tasks;
    for (std::int32_t n : cfg.n_values)
        for (std::int32_t trial = 0; trial < cfg.trials; ++trial) tasks.push_back({n, trial});
    std::vector<RowT> rows(tasks.size());
    const std::int32_t workers = std::max(1, cfg.threads);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    auto work = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const auto [n, trial] = tasks[i];
            rows[i] = fn(n, trial, Rng::derive_seed(cfg.base_seed, n, trial));
        }
    };
    for (std::int32_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    return rows;
}

inline double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / xs.size();
}

inline double stddev_of(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    double m = mean_of(xs), s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / (xs.size() - 1));
}

inline json quantiles_of(std::vector<double> xs) {
    if (xs.empty()) return json::object();
    std::sort(xs.begin(), xs.end());
    auto q = [&](double p) { return xs[static_cast<std::size_t>(p * (xs.size() - 1))]; };
    return {{"min", xs.front()}, {"q25", q(0.25)}, {"median", q(0.5)},
            {"q75", q(0.75)},    {"max", xs.back()}};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// topology_study: V / genus / connectivity statistics per n.

struct TopologyRow {
    std::int32_t n = 0, trial = 0;
    std::uint64_t seed = 0;
    std::int32_t vertices = 0, components = 0;
    bool connected = false;
    std::int32_t genus_sum = 0;
    bool one_vertex = false;
};

inline StudyReport topology_study(const StudyConfig& cfg) {
    auto rows = detail::run_grid<TopologyRow>(cfg, [&](std::int32_t n, std::int32_t trial,
                                                       std::uint64_t seed) {
        TopologyRow r{n, trial, seed};
        Triangulation t = build_triangulation(sample_pairing(n, seed));
        r.vertices = t.vertex_count();
        r.components = static_cast<std::int32_t>(t.components.size());
        r.connected = t.connected();
        for (const auto& c : t.components) r.genus_sum += c.genus;
        r.one_vertex = (r.vertices == 1);
        return r;
    });

    StudyReport rep;
    rep.header = {"n", "trial", "seed", "V", "E", "F", "components", "connected",
                  "genus_sum", "one_vertex"};
    for (const auto& r : rows)
        rep.rows.push_back({std::to_string(r.n), std::to_string(r.trial), std::to_string(r.seed),
                            std::to_string(r.vertices), std::to_string(3 * r.n),
                            std::to_string(2 * r.n), std::to_string(r.components),
                            std::to_string(r.connected ? 1 : 0), std::to_string(r.genus_sum),
                            std::to_string(r.one_vertex ? 1 : 0)});

    rep.summary["study"] = "topology";
    rep.summary["trials"] = cfg.trials;
    for (std::int32_t n : cfg.n_values) {
        std::vector<double> vs, gs;
        std::map<std::int32_t, std::int64_t> vhist, ghist;
        std::int64_t conn = 0, onev = 0, count = 0;
        for (const auto& r : rows) {
            if (r.n != n) continue;
            ++count;
            vs.push_back(r.vertices);
            gs.push_back(r.genus_sum);
            ++vhist[r.vertices];
            ++ghist[r.genus_sum];
            conn += r.connected;
            onev += r.one_vertex;
        }
        json entry;
        entry["n"] = n;
        entry["mean_V"] = detail::mean_of(vs);
        entry["mean_genus"] = detail::mean_of(gs);
        entry["connected_freq"] = count ? static_cast<double>(conn) / count : 0.0;
        entry["one_vertex_freq"] = count ? static_cast<double>(onev) / count : 0.0;
        entry["one_vertex_hits"] = onev;
        // standard errors of the two frequencies
        auto se = [&](double p) { return count ? std::sqrt(p * (1.0 - p) / count) : 0.0; };
        entry["connected_se"] = se(entry["connected_freq"].get<double>());
        entry["one_vertex_se"] = se(entry["one_vertex_freq"].get<double>());
        entry["one_vertex_times_3n_over_2"] =
            entry["one_vertex_freq"].get<double>() * 1.5 * n;
        for (auto& [v, c] : vhist) entry["V_hist"][std::to_string(v)] = c;
        for (auto& [g, c] : ghist) entry["genus_hist"][std::to_string(g)] = c;
        rep.summary["per_n"].push_back(entry);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// degree_study: ranked top degrees against the Poisson-Dirichlet picture.

struct DegreeRow {
    std::int32_t n = 0, trial = 0;
    std::uint64_t seed = 0;
    std::int32_t d1 = 0, d2 = 0;
};

inline StudyReport degree_study(const StudyConfig& cfg) {
    auto rows = detail::run_grid<DegreeRow>(cfg, [&](std::int32_t n, std::int32_t trial,
                                                     std::uint64_t seed) {
        DegreeRow r{n, trial, seed};
        Triangulation t = build_triangulation(sample_pairing(n, seed));
        std::int32_t best1 = 0, best2 = 0;
        for (VertexId v = 0; v < t.vertex_count(); ++v) {
            std::int32_t d = t.degree(v);
            if (d > best1) {
                best2 = best1;
                best1 = d;
            } else if (d > best2) {
                best2 = d;
            }
        }
        r.d1 = best1;
        r.d2 = best2;
        return r;
    });

    StudyReport rep;
    rep.header = {"n", "trial", "seed", "D1", "D2", "D1_frac", "D2_frac"};
    for (const auto& r : rows) {
        double m = 6.0 * r.n;
        rep.rows.push_back({std::to_string(r.n), std::to_string(r.trial), std::to_string(r.seed),
                            std::to_string(r.d1), std::to_string(r.d2), fmt_double(r.d1 / m),
                            fmt_double(r.d2 / m)});
    }

    rep.summary["study"] = "degrees";
    for (std::int32_t n : cfg.n_values) {
        std::vector<double> f1, f2;
        for (const auto& r : rows) {
            if (r.n != n) continue;
            f1.push_back(r.d1 / (6.0 * n));
            f2.push_back(r.d2 / (6.0 * n));
        }
        json entry;
        entry["n"] = n;
        entry["mean_D1_frac"] = detail::mean_of(f1);
        entry["mean_D2_frac"] = detail::mean_of(f2);
        entry["sd_D1_frac"] = detail::stddev_of(f1);
        entry["D1_frac_quantiles"] = detail::quantiles_of(f1);
        entry["D2_frac_quantiles"] = detail::quantiles_of(f2);
        rep.summary["per_n"].push_back(entry);
    }
    return rep;
}

// Longest-cycle fraction of a uniform permutation of m elements: the
// independent oracle for the top-degree law.
inline double permutation_longest_cycle_fraction(std::int32_t m, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::int32_t> perm(m);
    for (std::int32_t i = 0; i < m; ++i) perm[i] = i;
    for (std::int32_t i = m - 1; i > 0; --i) {
        std::int32_t j = static_cast<std::int32_t>(rng.uniform_below(i + 1));
        std::swap(perm[i], perm[j]);
    }
    std::vector<char> seen(m, 0);
    std::int32_t best = 0;
    for (std::int32_t i = 0; i < m; ++i) {
        if (seen[i]) continue;
        std::int32_t len = 0, cur = i;
        do {
            seen[cur] = 1;
            ++len;
            cur = perm[cur];
        } while (cur != i);
        best = std::max(best, len);
    }
    return static_cast<double>(best) / m;
}

// ---------------------------------------------------------------------------
// scaling_study: model diameter over n, with the structural checks.

struct ScalingRow {
    std::int32_t n = 0, trial = 0;
    std::uint64_t seed = 0;
    std::int32_t vertices = 0;
    bool connected = false;
    std::int32_t d1 = 0, d2 = 0;
    double diameter = 0.0, ratio = 0.0;
    double eq2_lb = 0.0;
    bool eq2_applicable = false, eq2_ok = true;
    bool censep_ok = true;
    bool largest_component_used = false;
    double ms = 0.0;
};

inline ScalingRow scaling_trial(const StudyConfig& cfg, const ModelParams& params, std::int32_t n,
                                std::int32_t trial, std::uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    ScalingRow r;
    r.n = n;
    r.trial = trial;
    r.seed = seed;
    Triangulation t = build_triangulation(sample_pairing(n, seed));
    r.vertices = t.vertex_count();
    r.connected = t.connected();
    std::int32_t comp = -1;
    if (!r.connected) {
        std::int32_t best = -1;
        for (std::size_t c = 0; c < t.components.size(); ++c)
            if (t.components[c].faces > best) {
                best = t.components[c].faces;
                comp = static_cast<std::int32_t>(c);
            }
        r.largest_component_used = true;
    }
    std::int32_t target = r.connected ? 0 : comp;
    std::vector<std::int32_t> degs;
    for (VertexId v = 0; v < t.vertex_count(); ++v) degs.push_back(t.degree(v));
    std::sort(degs.begin(), degs.end(), std::greater<>());
    r.d1 = degs.size() > 0 ? degs[0] : 0;
    r.d2 = degs.size() > 1 ? degs[1] : 0;

    MetricGraph g = build_graph(t, params, cfg.sparsification, r.connected ? -1 : comp);
    Rng rng(Rng::derive_seed(seed, 0xd1a3, 1));
    DiameterMode mode;
    mode.exact = cfg.diameter_exact;
    mode.sweep_sources = cfg.sweep_sources;
    DiameterReport dia = diameter(g, mode, rng);
    r.diameter = dia.value;
    r.ratio = dia.value / std::log(static_cast<double>(n));

    // Lower bound of the two-big-disks kind, when both logs are positive and
    // both top-degree vertices live in the measured component.
    if (r.d2 > 0 && params.alpha * r.d1 > 1.0 && params.alpha * r.d2 > 1.0) {
        VertexId v1 = -1, v2 = -1;
        for (VertexId v = 0; v < t.vertex_count(); ++v) {
            if (t.degree(v) == r.d1 && v1 < 0)
                v1 = v;
            else if (t.degree(v) == r.d2 && v2 < 0 && v != v1)
                v2 = v;
        }
        bool in_comp = v1 >= 0 && v2 >= 0 &&
                       (r.connected || (t.component_of_vertex[v1] == target &&
                                        t.component_of_vertex[v2] == target));
        if (in_comp) {
            r.eq2_applicable = true;
            r.eq2_lb = (1.0 - params.epsilon) *
                           (std::log(params.alpha * r.d1) + std::log(params.alpha * r.d2)) -
                       4.0 * params.R;
            r.eq2_ok = r.diameter >= r.eq2_lb - 1e-9;
        }
    }

    // Center separation: d(center_i, center_j) >= R_i + R_j.
    {
        Dijkstra dij(g);
        for (VertexId v = 0; v < t.vertex_count() && r.censep_ok; ++v) {
            if (g.center_node[v] < 0) continue;
            const auto& dist = dij.run(g.center_node[v]);
            for (VertexId w = v + 1; w < t.vertex_count(); ++w) {
                if (g.center_node[w] < 0) continue;
                if (dist[g.center_node[w]] <
                    g.disk_radius[v] + g.disk_radius[w] - 1e-9) {
                    r.censep_ok = false;
                    break;
                }
            }
        }
    }
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline StudyReport scaling_study(const StudyConfig& cfg) {
    const ModelParams params = cfg.params();
    auto rows = detail::run_grid<ScalingRow>(
        cfg, [&](std::int32_t n, std::int32_t trial, std::uint64_t seed) {
            return scaling_trial(cfg, params, n, trial, seed);
        });

    StudyReport rep;
    rep.header = {"n",        "trial",   "seed",    "V",       "connected",
                  "D1",       "D2",      "diameter", "ratio",  "eq2_lb",
                  "eq2_applicable", "eq2_ok", "censep_ok", "largest_component_used"};
    for (const auto& r : rows)
        rep.rows.push_back({std::to_string(r.n), std::to_string(r.trial), std::to_string(r.seed),
                            std::to_string(r.vertices), std::to_string(r.connected ? 1 : 0),
                            std::to_string(r.d1), std::to_string(r.d2), fmt_double(r.diameter),
                            fmt_double(r.ratio), fmt_double(r.eq2_lb),
                            std::to_string(r.eq2_applicable ? 1 : 0),
                            std::to_string(r.eq2_ok ? 1 : 0), std::to_string(r.censep_ok ? 1 : 0),
                            std::to_string(r.largest_component_used ? 1 : 0)});

    rep.summary["study"] = "scaling";
    rep.summary["epsilon"] = params.epsilon;
    rep.summary["L"] = params.L;
    rep.summary["R"] = params.R;
    rep.summary["alpha"] = params.alpha;
    rep.summary["c_face"] = params.c_face;
    std::vector<double> means;
    for (std::int32_t n : cfg.n_values) {
        std::vector<double> ratios, times;
        std::int64_t eq2_viol = 0, censep_viol = 0, disconnected = 0;
        for (const auto& r : rows) {
            if (r.n != n) continue;
            ratios.push_back(r.ratio);
            times.push_back(r.ms);
            eq2_viol += (r.eq2_applicable && !r.eq2_ok);
            censep_viol += !r.censep_ok;
            disconnected += !r.connected;
        }
        json entry;
        entry["n"] = n;
        entry["mean_ratio"] = detail::mean_of(ratios);
        entry["sd_ratio"] = detail::stddev_of(ratios);
        entry["ratio_quantiles"] = detail::quantiles_of(ratios);
        entry["eq2_violations"] = eq2_viol;
        entry["censep_violations"] = censep_viol;
        entry["disconnected_rows"] = disconnected;
        entry["mean_trial_ms"] = detail::mean_of(times);
        means.push_back(entry["mean_ratio"].get<double>());
        rep.summary["per_n"].push_back(entry);
    }
    bool increasing = true;
    for (std::size_t i = 1; i < means.size(); ++i)
        if (means[i] <= means[i - 1]) increasing = false;
    rep.summary["mean_ratio_increasing"] = increasing;
    return rep;
}

// ---------------------------------------------------------------------------
// proposition_study: run the three explorations against their oracles.

struct PropositionRow {
    std::int32_t n = 0, trial = 0;
    std::uint64_t seed = 0;
    // status strings: one of explore_status_name() or "n/a"
    std::string case1 = "n/a", case2 = "n/a", case3 = "n/a";
    bool case1_ok = true, case2_ok = true, case3_ok = true;
    std::int32_t tiny_cover_num = 0, tiny_cover_den = 0;
};

inline PropositionRow proposition_trial(double eps, std::int32_t n, std::int32_t trial,
                                        std::uint64_t seed) {
    PropositionRow r;
    r.n = n;
    r.trial = trial;
    r.seed = seed;
    Triangulation t = build_triangulation(sample_pairing(n, seed));
    Rng rng(Rng::derive_seed(seed, 0x9e0b, 2));

    auto corner_pair = [&](VertexId v1, VertexId v2, CornerRef& c1, CornerRef& c2) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            HalfEdgeId a = t.orbits[v1][rng.uniform_below(t.degree(v1))];
            HalfEdgeId b = t.orbits[v2][rng.uniform_below(t.degree(v2))];
            if (triangle_of(a) != triangle_of(b)) {
                c1 = {a};
                c2 = {b};
                return true;
            }
        }
        return false;
    };

    // Case 1: the two largest-degree vertices, when inside the large regime.
    std::vector<VertexId> order(t.vertex_count());
    for (VertexId v = 0; v < t.vertex_count(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(),
              [&](VertexId a, VertexId b) { return t.degree(a) > t.degree(b); });
    if (order.size() >= 2) {
        VertexId v1 = order[0], v2 = order[1];
        if (static_cast<double>(t.degree(v1)) * t.degree(v2) >= std::pow(n, 1.0 + eps)) {
            CornerRef c1, c2;
            if (corner_pair(v1, v2, c1, c2)) {
                auto out = explore_pair_large(t, c1, c2, eps);
                r.case1 = explore_status_name(out.status);
                r.case1_ok = oracle_confirms_large(t, c1, c2, eps, out);
            }
        }
    }

    // Case 2: a uniform qualifying pair of the small regime.
    {
        const double hi = std::pow(n, 1.0 + eps), lo = std::pow(n, 2.0 * eps);
        std::vector<std::pair<VertexId, VertexId>> qualifying;
        for (VertexId v1 = 0; v1 < t.vertex_count(); ++v1)
            for (VertexId v2 = v1 + 1; v2 < t.vertex_count(); ++v2) {
                double d1 = t.degree(v1), d2 = t.degree(v2);
                if (d1 * d2 <= hi && d1 >= lo && d2 >= lo) qualifying.push_back({v1, v2});
            }
        if (!qualifying.empty()) {
            auto [v1, v2] = qualifying[rng.uniform_below(qualifying.size())];
            CornerRef c1, c2;
            if (corner_pair(v1, v2, c1, c2)) {
                auto out = explore_pair_small(t, c1, c2, eps);
                r.case2 = explore_status_name(out.status);
                r.case2_ok = oracle_confirms_small(t, c1, c2, eps, out);
            }
        }
    }

    // Case 3: tiny exploration from a uniform corner.
    {
        CornerRef c{static_cast<HalfEdgeId>(rng.uniform_below(6 * n))};
        auto out = explore_tiny(t, c);
        r.case3 = explore_status_name(out.status);
        r.case3_ok = oracle_confirms_tiny(t, c, out);
    }

    // Coverage of the tiny-vertex claim over all vertices of the sample.
    auto [num, den] = tiny_coverage(t);
    r.tiny_cover_num = num;
    r.tiny_cover_den = den;
    return r;
}

inline StudyReport proposition_study(const StudyConfig& cfg, double eps) {
    if (!(eps > 0.0 && eps < 0.125))
        throw std::invalid_argument("proposition_study: epsilon must lie in (0, 1/8)");
    auto rows = detail::run_grid<PropositionRow>(
        cfg, [&](std::int32_t n, std::int32_t trial, std::uint64_t seed) {
            return proposition_trial(eps, n, trial, seed);
        });

    StudyReport rep;
    rep.header = {"n",        "trial",    "seed",     "case1",   "case1_ok", "case2",
                  "case2_ok", "case3",    "case3_ok", "tiny_cover_num", "tiny_cover_den"};
    for (const auto& r : rows)
        rep.rows.push_back({std::to_string(r.n), std::to_string(r.trial), std::to_string(r.seed),
                            r.case1, std::to_string(r.case1_ok ? 1 : 0), r.case2,
                            std::to_string(r.case2_ok ? 1 : 0), r.case3,
                            std::to_string(r.case3_ok ? 1 : 0), std::to_string(r.tiny_cover_num),
                            std::to_string(r.tiny_cover_den)});

    rep.summary["study"] = "propositions";
    rep.summary["epsilon"] = eps;
    for (std::int32_t n : cfg.n_values) {
        json entry;
        entry["n"] = n;
        auto tally = [&](auto member_status, auto member_ok, const char* key) {
            std::map<std::string, std::int64_t> statuses;
            std::int64_t bad = 0, applicable = 0, fails = 0;
            for (const auto& r : rows) {
                if (r.n != n) continue;
                const std::string& s = r.*member_status;
                ++statuses[s];
                if (s == "n/a") continue;
                ++applicable;
                if (!(r.*member_ok)) ++bad;
                if (s == "fail") ++fails;
            }
            json j;
            for (auto& [s, c] : statuses) j["statuses"][s] = c;
            j["applicable"] = applicable;
            j["oracle_discrepancies"] = bad;
            j["fail_fraction"] = applicable ? static_cast<double>(fails) / applicable : 0.0;
            entry[key] = j;
        };
        tally(&PropositionRow::case1, &PropositionRow::case1_ok, "large");
        tally(&PropositionRow::case2, &PropositionRow::case2_ok, "small");
        tally(&PropositionRow::case3, &PropositionRow::case3_ok, "tiny");
        std::int64_t num = 0, den = 0;
        for (const auto& r : rows) {
            if (r.n != n) continue;
            num += r.tiny_cover_num;
            den += r.tiny_cover_den;
        }
        entry["tiny_coverage"] = den ? static_cast<double>(num) / den : 0.0;
        rep.summary["per_n"].push_back(entry);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// conjecture_probe: diameters conditioned on a single vertex (V=1).

struct ConjectureRow {
    std::int32_t n = 0, trial = 0;
    std::uint64_t seed = 0;
    std::int64_t rejections = 0;
    std::int32_t genus = 0;
    double diameter = 0.0, ratio = 0.0;
};

inline StudyReport conjecture_probe(const StudyConfig& cfg) {
    for (std::int32_t n : cfg.n_values)
        if (n % 2 == 0)
            throw std::invalid_argument("conjecture_probe: n must be odd (V=1 needs odd n)");
    const ModelParams params = cfg.params();
    auto rows = detail::run_grid<ConjectureRow>(cfg, [&](std::int32_t n, std::int32_t trial,
                                                         std::uint64_t seed) {
        ConjectureRow r;
        r.n = n;
        r.trial = trial;
        r.seed = seed;
        Rng stream(seed);
        for (;;) {
            Triangulation t = build_triangulation(sample_pairing(n, stream.next_u64()));
            if (t.vertex_count() != 1) {
                ++r.rejections;
                continue;
            }
            r.genus = t.components[0].genus;
            MetricGraph g = build_graph(t, params, cfg.sparsification);
            Rng rng(Rng::derive_seed(seed, 0xc0de, 3));
            DiameterMode mode;
            mode.exact = cfg.diameter_exact;
            mode.sweep_sources = cfg.sweep_sources;
            r.diameter = diameter(g, mode, rng).value;
            r.ratio = r.diameter / std::log(static_cast<double>(n));
            return r;
        }
    });

    StudyReport rep;
    rep.header = {"n", "trial", "seed", "rejections", "V", "genus", "diameter", "ratio"};
    for (const auto& r : rows)
        rep.rows.push_back({std::to_string(r.n), std::to_string(r.trial), std::to_string(r.seed),
                            std::to_string(r.rejections), "1", std::to_string(r.genus),
                            fmt_double(r.diameter), fmt_double(r.ratio)});

    rep.summary["study"] = "conjecture";
    for (std::int32_t n : cfg.n_values) {
        std::vector<double> ratios, rejs;
        for (const auto& r : rows) {
            if (r.n != n) continue;
            ratios.push_back(r.ratio);
            rejs.push_back(static_cast<double>(r.rejections));
        }
        json entry;
        entry["n"] = n;
        entry["mean_ratio"] = detail::mean_of(ratios);
        entry["ratio_quantiles"] = detail::quantiles_of(ratios);
        entry["mean_rejections"] = detail::mean_of(rejs);
        entry["expected_genus"] = (n + 1) / 2;
        rep.summary["per_n"].push_back(entry);
    }
    return rep;
}

}  // namespace belyi
