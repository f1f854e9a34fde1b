// Command-line front end: sampling, studies, explorations, the metric model
// and a self-check suite, all reproducible from a single seed.

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <map>
#include <random>
#include <string>

#include "belyi/explore.hpp"
#include "belyi/graph_algo.hpp"
#include "belyi/map_io.hpp"
#include "belyi/metric.hpp"
#include "belyi/oracles.hpp"
#include "belyi/peeling.hpp"
#include "belyi/stats.hpp"

using namespace belyi;

namespace {

std::uint64_t resolve_seed(CLI::Option* opt, std::uint64_t value) {
    if (opt != nullptr && opt->count() > 0) return value;
    std::random_device rd;
    std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::fprintf(stderr, "seed: %" PRIu64 "\n", seed);
    return seed;
}

std::vector<std::int32_t> parse_n_list(const std::string& text) {
    std::vector<std::int32_t> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string tok =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!tok.empty()) out.push_back(std::stoi(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw CLI::ValidationError("--n", "expected a comma-separated list");
    for (std::int32_t n : out)
        if (n < 1) throw CLI::ValidationError("--n", "values must be positive");
    return out;
}

struct CommonFlags {
    std::string n_list = "100";
    std::int32_t trials = 100;
    std::uint64_t seed = 0;
    double epsilon = 0.1;
    double L = 10.0;
    double alpha = -1.0, rho0 = -1.0, cface = -1.0;
    std::string sparsification = "dyadic";
    std::string diameter_mode = "sweep";
    std::int32_t threads = 1;
    std::string in_path, out_path;
    CLI::Option* seed_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool wants_model) {
    cmd->add_option("--n", f.n_list, "map size(s), comma separated");
    cmd->add_option("--trials", f.trials, "trials per n")->check(CLI::PositiveNumber);
    f.seed_opt = cmd->add_option("--seed", f.seed, "base seed (default: entropy, printed)");
    cmd->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--out", f.out_path, "output CSV path");
    if (wants_model) {
        cmd->add_option("--epsilon", f.epsilon, "model epsilon in (0,1)");
        cmd->add_option("--L", f.L, "horocycle length L > 0");
        cmd->add_option("--alpha", f.alpha, "horosegment length override");
        cmd->add_option("--rho0", f.rho0, "disk radius floor override");
        cmd->add_option("--cface", f.cface, "cross-face constant override");
        cmd->add_option("--sparsification", f.sparsification, "dense|dyadic")
            ->check(CLI::IsMember({"dense", "dyadic"}));
        cmd->add_option("--diameter", f.diameter_mode, "exact|sweep")
            ->check(CLI::IsMember({"exact", "sweep"}));
    }
}

StudyConfig to_config(const CommonFlags& f) {
    StudyConfig cfg;
    cfg.n_values = parse_n_list(f.n_list);
    cfg.trials = f.trials;
    cfg.base_seed = resolve_seed(f.seed_opt, f.seed);
    cfg.epsilon = f.epsilon;
    cfg.L = f.L;
    if (f.alpha > 0) cfg.overrides.alpha = f.alpha;
    if (f.rho0 > 0) cfg.overrides.rho0 = f.rho0;
    if (f.cface > 0) cfg.overrides.c_face = f.cface;
    cfg.sparsification =
        f.sparsification == "dense" ? Sparsification::Dense : Sparsification::Dyadic;
    cfg.diameter_exact = f.diameter_mode == "exact";
    cfg.threads = f.threads;
    cfg.out_path = f.out_path;
    return cfg;
}

int run_study(const CommonFlags& f, StudyReport (*study)(const StudyConfig&)) {
    StudyConfig cfg = to_config(f);
    StudyReport rep = study(cfg);
    write_report(rep, cfg.out_path);
    std::printf("%s\n", rep.summary.dump(2).c_str());
    return 0;
}

// --- peel subcommand -------------------------------------------------------

int run_peel(const CommonFlags& f, const std::string& algo, const std::string& chooser_name,
             const std::string& trace_path, double eps) {
    Pairing p = read_map_file(f.in_path);
    Triangulation t = build_triangulation(p);
    std::uint64_t seed = resolve_seed(f.seed_opt, f.seed);

    if (!trace_path.empty()) {
        std::string lines;
        PeelChooser chooser = chooser_name == "random" ? random_chooser(seed)
                              : chooser_name == "fan"  ? fan_chooser()
                                                       : lex_chooser();
        run_to_completion(p, chooser, false, [&](const GlueEvent& ev, const PeelState& st) {
            lines += trace_json_line(ev, st);
            lines += '\n';
        });
        write_file_atomic(trace_path, lines);
        std::printf("trace: %d events -> %s\n", 3 * p.n, trace_path.c_str());
    }

    std::map<std::string, std::int64_t> tally;
    std::int64_t verified = 0, witnesses = 0, na = 0;
    for (std::int32_t trial = 0; trial < f.trials; ++trial) {
        Rng rng(Rng::derive_seed(seed, 0xabc, trial));
        auto corner_on = [&](VertexId v) -> HalfEdgeId {
            return t.orbits[v][rng.uniform_below(t.degree(v))];
        };
        try {
            if (algo == "tiny") {
                CornerRef c{static_cast<HalfEdgeId>(rng.uniform_below(6 * p.n))};
                auto out = explore_tiny(t, c);
                ++tally[explore_status_name(out.status)];
                if (out.status == ExploreStatus::SuccessWitness) {
                    ++witnesses;
                    verified += oracle_confirms_tiny(t, c, out);
                }
            } else {
                const double hi = std::pow(p.n, 1.0 + eps), lo = std::pow(p.n, 2.0 * eps);
                std::vector<std::pair<VertexId, VertexId>> qualifying;
                for (VertexId a = 0; a < t.vertex_count(); ++a)
                    for (VertexId b = a + 1; b < t.vertex_count(); ++b) {
                        double prod = static_cast<double>(t.degree(a)) * t.degree(b);
                        bool is_large = prod >= hi;
                        bool is_small = prod <= hi && t.degree(a) >= lo && t.degree(b) >= lo;
                        if ((algo == "large" && is_large) || (algo == "small" && is_small))
                            qualifying.push_back({a, b});
                    }
                if (qualifying.empty()) {
                    ++na;
                    continue;
                }
                auto [va, vb] = qualifying[rng.uniform_below(qualifying.size())];
                CornerRef c1{corner_on(va)}, c2{corner_on(vb)};
                if (triangle_of(c1.half_edge) == triangle_of(c2.half_edge)) {
                    ++na;
                    continue;
                }
                auto out = algo == "large" ? explore_pair_large(t, c1, c2, eps)
                                           : explore_pair_small(t, c1, c2, eps);
                ++tally[explore_status_name(out.status)];
                bool carries = out.status == ExploreStatus::SuccessWitness ||
                               out.status == ExploreStatus::SuccessFaceWitness;
                if (carries) {
                    ++witnesses;
                    verified += algo == "large" ? oracle_confirms_large(t, c1, c2, eps, out)
                                                : oracle_confirms_small(t, c1, c2, eps, out);
                }
            }
        } catch (const PreconditionUnmet&) {
            ++na;
        }
    }

    std::printf("exploration: %s   trials: %d   n/a: %" PRId64 "\n", algo.c_str(), f.trials, na);
    for (const auto& [status, count] : tally)
        std::printf("  %-24s %8" PRId64 "\n", status.c_str(), count);
    std::printf("  witnesses oracle-verified: %" PRId64 "/%" PRId64 "\n", verified, witnesses);
    return (witnesses == verified) ? 0 : 1;
}

// --- metric subcommand -----------------------------------------------------

int run_metric(const CommonFlags& f, const std::string& dump_prefix) {
    Pairing p = read_map_file(f.in_path);
    Triangulation t = build_triangulation(p);
    std::uint64_t seed = resolve_seed(f.seed_opt, f.seed);

    std::int32_t comp = -1;
    if (!t.connected()) {
        std::int32_t best = -1;
        for (std::size_t c = 0; c < t.components.size(); ++c)
            if (t.components[c].faces > best) {
                best = t.components[c].faces;
                comp = static_cast<std::int32_t>(c);
            }
    }
    ParamOverrides ov;
    if (f.alpha > 0) ov.alpha = f.alpha;
    if (f.rho0 > 0) ov.rho0 = f.rho0;
    if (f.cface > 0) ov.c_face = f.cface;
    ModelParams params = derive_params(f.epsilon, f.L, ov);
    Sparsification sp =
        f.sparsification == "dense" ? Sparsification::Dense : Sparsification::Dyadic;
    MetricGraph g = build_graph(t, params, sp, comp);

    Rng rng(seed);
    DiameterMode mode;
    mode.exact = f.diameter_mode == "exact";
    DiameterReport rep = diameter(g, mode, rng);

    if (!dump_prefix.empty()) {
        std::string nodes = "id,kind,vertex,angle\n";
        for (std::int32_t v = 0; v < g.node_count; ++v) {
            nodes += std::to_string(v);
            nodes += g.is_center[v] ? ",center," : ",corner,";
            nodes += std::to_string(g.node_vertex[v]);
            nodes += ',';
            nodes += fmt_double(g.node_angle[v]);
            nodes += '\n';
        }
        std::string edges = "u,v,weight\n";
        for (std::int32_t u = 0; u < g.node_count; ++u)
            for (std::int64_t e = g.adj_offset[u]; e < g.adj_offset[u + 1]; ++e)
                if (u < g.adj_to[e]) {
                    edges += std::to_string(u) + ',' + std::to_string(g.adj_to[e]) + ',' +
                             fmt_double(g.adj_weight[e]) + '\n';
                }
        write_file_atomic(dump_prefix + ".nodes.csv", nodes);
        write_file_atomic(dump_prefix + ".edges.csv", edges);
    }

    json out;
    out["n"] = t.n();
    out["vertices"] = t.vertex_count();
    out["connected"] = t.connected();
    out["component"] = comp;
    out["nodes"] = g.node_count;
    out["edges"] = g.edge_count();
    out["sparsification"] = f.sparsification;
    out["mode"] = rep.exact ? "exact" : "sweep";
    out["diameter"] = rep.value;
    out["diameter_over_log_n"] = rep.value / std::log(static_cast<double>(t.n()));
    out["endpoints"] = {rep.node_a, rep.node_b};
    out["dijkstra_runs"] = rep.dijkstra_runs;
    out["lower_bound_only"] = !rep.exact;
    out["params"] = {{"epsilon", params.epsilon}, {"L", params.L},       {"R", params.R},
                     {"alpha", params.alpha},     {"rho0", params.rho0}, {"c_face", params.c_face}};
    std::printf("%s\n", out.dump(2).c_str());
    return 0;
}

// --- verify subcommand -----------------------------------------------------

struct Verifier {
    int failures = 0;
    void check(bool ok, const std::string& name, const std::string& detail = "") {
        std::printf("[%s] %s%s%s\n", ok ? "ok" : "FAIL", name.c_str(), detail.empty() ? "" : ": ",
                    detail.c_str());
        if (!ok) ++failures;
    }
};

int run_verify(bool quick, std::uint64_t seed) {
    Verifier v;
    const std::int32_t trials = quick ? 200 : 1000;

    {
        bool ok = true;
        for (std::int32_t n : {1, 10, 100})
            for (std::int32_t trial = 0; trial < trials / 10; ++trial) {
                Pairing p = sample_pairing(n, Rng::derive_seed(seed, n, trial));
                ok = ok && p.is_valid() &&
                     p.match == sample_pairing(n, Rng::derive_seed(seed, n, trial)).match;
            }
        v.check(ok, "sampling: fixed-point-free involution, deterministic");
    }

    {
        bool ok = true;
        for (std::int32_t n : {1, 10, 100})
            for (std::int32_t trial = 0; trial < trials; ++trial) {
                Triangulation t =
                    build_triangulation(sample_pairing(n, Rng::derive_seed(seed + 1, n, trial)));
                for (const auto& c : t.components)
                    ok = ok && c.genus >= 0 && (c.vertices - c.edges + c.faces == 2 - 2 * c.genus);
                if (t.connected()) ok = ok && ((t.vertex_count() - n) % 2 == 0);
            }
        v.check(ok, "topology: per-component Euler formula, V = n (mod 2)");
    }

    {
        bool ok = true;
        for (std::int32_t trial = 0; trial < trials / 10 && ok; ++trial) {
            Pairing p = sample_pairing(20, Rng::derive_seed(seed + 2, 20, trial));
            Triangulation direct = build_triangulation(p);
            for (auto& chooser : {lex_chooser(), fan_chooser(), random_chooser(trial)}) {
                auto run = run_to_completion(p, chooser);
                std::int32_t i = 1, closed = 0;
                for (const auto& ev : run.events) {
                    ok = ok && ev.boundary_after == 120 - 2 * i;
                    ++i;
                    closed += static_cast<std::int32_t>(ev.closed_roots.size());
                }
                ok = ok && closed == direct.vertex_count();
                ok = ok && run.triangulation.pairing.match == p.match;
            }
        }
        v.check(ok, "peeling: boundary law 6n-2i, replay equals direct build");
    }

    {
        Pairing p = sample_pairing(25, seed + 3);
        bool ok = decode_map(encode_map(p)).match == p.match;
        try {
            decode_map("belyi-map v1\nn=1\n0 2 1 4 3 5\n");
            ok = false;
        } catch (const MapFormatError&) {
        }
        v.check(ok, "map codec: round-trip and fixed-point rejection");
    }

    {
        bool ok = true;
        for (double r : {0.5, 2.0, 8.0}) {
            ok = ok && hyp_chord(r, r, 0.0) == 0.0;
            ok = ok && std::fabs(hyp_chord(r, r, kPi) - 2 * r) < 1e-11 * (1 + 2 * r);
            double prev = -1;
            for (int k = 0; k <= 32; ++k) {
                double d = hyp_chord(r, r, kPi * k / 32.0);
                ok = ok && d > prev;
                prev = d;
            }
        }
        v.check(ok, "hyp_chord: analytic cases and angle monotonicity");
    }

    {
        Triangulation t = build_triangulation(sample_pairing(quick ? 32 : 128, seed + 4));
        ModelParams params = derive_params(0.1, 10.0);
        MetricGraph g = build_graph(t, params, Sparsification::Dyadic, t.connected() ? -1 : 0);
        bool ok = g.node_count > 0;
        Dijkstra dij(g);
        std::vector<std::vector<double>> dist;
        const std::int32_t nsrc = std::min(8, g.node_count);
        for (std::int32_t s = 0; s < nsrc; ++s) dist.push_back(dij.run(s));
        Rng rng(seed + 5);
        for (int i = 0; i < 2000 && ok; ++i) {
            std::int32_t a = static_cast<std::int32_t>(rng.uniform_below(nsrc));
            std::int32_t b = static_cast<std::int32_t>(rng.uniform_below(nsrc));
            std::int32_t c = static_cast<std::int32_t>(rng.uniform_below(g.node_count));
            ok = ok && std::fabs(dist[a][b] - dist[b][a]) < 1e-9;
            ok = ok && dist[a][c] <= dist[a][b] + dist[b][c] + 1e-9;
        }
        if (t.connected()) {
            Dijkstra dij2(g);
            for (VertexId a = 0; a < t.vertex_count() && ok; ++a) {
                const auto& d = dij2.run(g.center_node[a]);
                for (VertexId b = a + 1; b < t.vertex_count(); ++b)
                    ok = ok && d[g.center_node[b]] >= g.disk_radius[a] + g.disk_radius[b] - 1e-9;
            }
        }
        v.check(ok, "metric graph: metric axioms and center separation");
    }

    {
        bool ok = true;
        std::int32_t checked = 0;
        for (std::int32_t trial = 0; trial < (quick ? 40 : 200); ++trial) {
            Triangulation t =
                build_triangulation(sample_pairing(60, Rng::derive_seed(seed + 6, 60, trial)));
            Rng rng(trial);
            CornerRef c{static_cast<HalfEdgeId>(rng.uniform_below(6 * 60))};
            auto out = explore_tiny(t, c);
            ok = ok && oracle_confirms_tiny(t, c, out);
            ++checked;
        }
        v.check(ok, "explorations: tiny witnesses oracle-confirmed",
                std::to_string(checked) + " runs");
    }

    std::printf("%s\n",
                v.failures == 0 ? "verify: all checks passed" : "verify: FAILURES detected");
    return v.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random Belyi surface toolkit: uniform triangle gluings, peeling "
                 "explorations, and the disk-gluing metric model"};
    app.require_subcommand(1);

    CommonFlags fs;
    auto* sample = app.add_subcommand("sample", "sample a uniform gluing, write a map file");
    sample->add_option("--n", fs.n_list, "map size");
    fs.seed_opt = sample->add_option("--seed", fs.seed, "seed");
    sample->add_option("--out", fs.out_path, "map file path")->required();

    CommonFlags ft, fd, fc, fg, fp;
    auto* topology = app.add_subcommand("topology", "V/genus/connectivity statistics");
    add_common(topology, ft, false);
    auto* degrees = app.add_subcommand("degrees", "ranked top-degree statistics");
    add_common(degrees, fd, false);
    auto* scaling = app.add_subcommand("scaling", "model diameter across n");
    add_common(scaling, fc, true);
    auto* conjecture = app.add_subcommand("conjecture", "one-vertex conditioned diameters");
    add_common(conjecture, fg, true);
    auto* props = app.add_subcommand("props", "exploration propositions against oracles");
    add_common(props, fp, false);
    double props_eps = 0.1;
    props->add_option("--epsilon", props_eps, "proposition epsilon in (0,1/8)");

    CommonFlags fe;
    auto* peel = app.add_subcommand("peel", "run explorations on a stored map");
    peel->add_option("--in", fe.in_path, "map file")->required();
    std::string algo = "tiny", chooser = "lex", trace_path;
    double peel_eps = 0.1;
    peel->add_option("--algo", algo, "large|small|tiny")
        ->check(CLI::IsMember({"large", "small", "tiny"}));
    peel->add_option("--trials", fe.trials, "number of exploration runs");
    fe.seed_opt = peel->add_option("--seed", fe.seed, "seed");
    peel->add_option("--epsilon", peel_eps, "regime epsilon");
    peel->add_option("--chooser", chooser, "lex|fan|random (for --trace)")
        ->check(CLI::IsMember({"lex", "fan", "random"}));
    peel->add_option("--trace", trace_path, "write a JSON-lines glue event trace");

    CommonFlags fm;
    auto* metric = app.add_subcommand("metric", "build the disk model for a stored map");
    metric->add_option("--in", fm.in_path, "map file")->required();
    fm.seed_opt = metric->add_option("--seed", fm.seed, "seed (sweep sources)");
    metric->add_option("--epsilon", fm.epsilon, "model epsilon");
    metric->add_option("--L", fm.L, "horocycle length");
    metric->add_option("--alpha", fm.alpha, "horosegment override");
    metric->add_option("--rho0", fm.rho0, "radius floor override");
    metric->add_option("--cface", fm.cface, "cross-face constant override");
    metric->add_option("--sparsification", fm.sparsification, "dense|dyadic")
        ->check(CLI::IsMember({"dense", "dyadic"}));
    metric->add_option("--diameter", fm.diameter_mode, "exact|sweep")
        ->check(CLI::IsMember({"exact", "sweep"}));
    std::string dump_prefix;
    metric->add_option("--dump-prefix", dump_prefix, "write <prefix>.nodes.csv/.edges.csv");

    auto* verify = app.add_subcommand("verify", "run the invariant suite");
    bool quick = false;
    verify->add_flag("--quick", quick, "reduced sizes");
    std::uint64_t verify_seed = 0;
    auto* vseed = verify->add_option("--seed", verify_seed, "seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample->parsed()) {
            auto ns = parse_n_list(fs.n_list);
            if (ns.size() != 1) throw CLI::ValidationError("--n", "sample takes a single n");
            Pairing p = sample_pairing(ns[0], resolve_seed(fs.seed_opt, fs.seed));
            write_map_file(fs.out_path, p);
            std::printf("wrote %s (n=%d)\n", fs.out_path.c_str(), p.n);
            return 0;
        }
        if (topology->parsed()) return run_study(ft, topology_study);
        if (degrees->parsed()) return run_study(fd, degree_study);
        if (scaling->parsed()) return run_study(fc, scaling_study);
        if (conjecture->parsed()) {
            for (std::int32_t n : parse_n_list(fg.n_list))
                if (n % 2 == 0)
                    throw CLI::ValidationError(
                        "--n", "conjecture needs odd n (V=1 is impossible for even n)");
            return run_study(fg, conjecture_probe);
        }
        if (props->parsed()) {
            StudyConfig cfg = to_config(fp);
            StudyReport rep = proposition_study(cfg, props_eps);
            write_report(rep, cfg.out_path);
            std::printf("%s\n", rep.summary.dump(2).c_str());
            return 0;
        }
        if (peel->parsed()) return run_peel(fe, algo, chooser, trace_path, peel_eps);
        if (metric->parsed()) return run_metric(fm, dump_prefix);
        if (verify->parsed()) return run_verify(quick, vseed->count() ? verify_seed : 20240808ULL);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
