#include <gtest/gtest.h>

#include <cmath>

#include "belyi/graph_algo.hpp"
#include "belyi/metric.hpp"
#include "belyi/pairing.hpp"
#include "belyi/rng.hpp"
#include "belyi/triangulation.hpp"

using namespace belyi;

namespace {

// Independent oracle: hyperboloid coordinates, d = arccosh(-<x,y>).
double hyperboloid_distance(double r1, double t1, double r2, double t2) {
    double x0 = std::cosh(r1), x1 = std::sinh(r1) * std::cos(t1), x2 = std::sinh(r1) * std::sin(t1);
    double y0 = std::cosh(r2), y1 = std::sinh(r2) * std::cos(t2), y2 = std::sinh(r2) * std::sin(t2);
    double m = x0 * y0 - x1 * y1 - x2 * y2;
    return std::acosh(m < 1.0 ? 1.0 : m);
}

Pairing torus_pairing() {
    Pairing p;
    p.n = 1;
    p.match = {3, 4, 5, 0, 1, 2};
    return p;
}

}  // namespace

TEST(DeriveParams, MatchesFrozenValuesAndGuards) {
    ModelParams p = derive_params(0.1, 10.0);
    EXPECT_NEAR(p.R, 1.37291001370798, 1e-12);  // (1.1)^{3/2} log((e^{pi/5}+1)/(e^{pi/5}-1))
    EXPECT_DOUBLE_EQ(p.alpha, 0.05);            // min(1, 1/(2L))
    EXPECT_DOUBLE_EQ(p.rho0, p.R);
    EXPECT_DOUBLE_EQ(p.c_face, 4.0 * p.R + 2.0);

    ParamOverrides ov;
    ov.alpha = 1.0;
    ov.c_face = 3.0;
    ModelParams q = derive_params(0.2, 5.0, ov);
    EXPECT_DOUBLE_EQ(q.alpha, 1.0);
    EXPECT_DOUBLE_EQ(q.c_face, 3.0);

    EXPECT_THROW(derive_params(1.5, 10.0), std::invalid_argument);
    EXPECT_THROW(derive_params(0.0, 10.0), std::invalid_argument);
    EXPECT_THROW(derive_params(0.1, 0.0), std::invalid_argument);
    ParamOverrides bad;
    bad.alpha = 2.0;  // alpha must stay in (0,1]
    EXPECT_THROW(derive_params(0.1, 10.0, bad), std::invalid_argument);
}

TEST(HypChord, AnalyticCases) {
    for (double r : {0.3, 1.0, 5.0, 20.0}) {
        EXPECT_EQ(hyp_chord(r, r, 0.0), 0.0);
        EXPECT_NEAR(hyp_chord(r, r, kPi), 2.0 * r, 2.0 * r * 1e-12);
    }
    EXPECT_NEAR(hyp_chord(1.0, 1.0, kPi / 2), 1.5133740065965, 1e-12);  // arccosh(cosh^2 1)
    EXPECT_THROW(hyp_chord(-1.0, 1.0, 0.5), std::invalid_argument);
    EXPECT_THROW(hyp_chord(1.0, 1.0, -0.1), std::invalid_argument);
    EXPECT_THROW(hyp_chord(1.0, 1.0, 2.0 * kPi), std::invalid_argument);
}

TEST(HypChord, AgreesWithHyperboloidOracle) {
    Rng rng(2024);
    for (int i = 0; i < 20000; ++i) {
        double r1 = 6.0 * rng.uniform01();
        double r2 = 6.0 * rng.uniform01();
        double th = 2.0 * kPi * rng.uniform01() * 0.9999;
        double got = hyp_chord(r1, r2, th);
        double want = hyperboloid_distance(r1, 0.0, r2, th);
        EXPECT_NEAR(got, want, 1e-9 + want * 1e-9);
        EXPECT_NEAR(got, hyp_chord(r2, r1, th), 1e-12);
    }
}

TEST(HypChord, MonotoneInAngleAndTriangleInequality) {
    for (double r : {0.5, 2.0, 7.0}) {
        double prev = -1.0;
        for (int k = 0; k <= 64; ++k) {
            double d = hyp_chord(r, r, kPi * k / 64.0);
            EXPECT_GT(d, prev);
            prev = d;
        }
    }
    Rng rng(55);
    for (int i = 0; i < 10000; ++i) {
        double r = 8.0 * rng.uniform01();
        double a = 2.0 * kPi * rng.uniform01() * 0.999;
        double b = 2.0 * kPi * rng.uniform01() * 0.999;
        double c = 2.0 * kPi * rng.uniform01() * 0.999;
        auto gap = [](double x, double y) {
            double d = std::fabs(x - y);
            return std::min(d, 2.0 * kPi - d);
        };
        EXPECT_LE(hyp_chord(r, r, gap(a, c)), hyp_chord(r, r, gap(a, b)) + hyp_chord(r, r, gap(b, c)) + 1e-9);
    }
}

TEST(BuildGraph, TorusHasSevenNodes) {
    auto t = build_triangulation(torus_pairing());
    auto params = derive_params(0.1, 10.0);
    auto g = build_graph(t, params, Sparsification::Dense);
    EXPECT_EQ(g.node_count, 7);  // 6 corners + 1 center
    // degree 6 disk, antipodal gap 3: chord weight = 2 R_v
    double rv = g.disk_radius[0];
    EXPECT_DOUBLE_EQ(rv, std::max(std::log(params.alpha * 6.0), params.rho0));
    bool found_antipodal = false;
    std::int32_t c0 = g.corner_node[t.orbits[0][0]], c3 = g.corner_node[t.orbits[0][3]];
    for (std::int64_t e = g.adj_offset[c0]; e < g.adj_offset[c0 + 1]; ++e)
        if (g.adj_to[e] == c3 && std::fabs(g.adj_weight[e] - 2.0 * rv) < 1e-12)
            found_antipodal = true;
    EXPECT_TRUE(found_antipodal);
}

TEST(BuildGraph, NodeCountAndDyadicEdgeBound) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto t = build_triangulation(sample_pairing(40, seed * 7 + 1));
        auto params = derive_params(0.1, 10.0);
        auto g = build_graph(t, params, Sparsification::Dyadic);
        EXPECT_EQ(g.node_count, 6 * 40 + t.vertex_count());
        for (double w : g.adj_weight) EXPECT_GE(w, 0.0);
        // per-disk edges (spokes + chords) <= d*(2 + ceil(log2 d))
        for (VertexId v = 0; v < t.vertex_count(); ++v) {
            double d = t.degree(v);
            std::int64_t in_disk = 0;
            for (HalfEdgeId h : t.orbits[v]) {
                std::int32_t node = g.corner_node[h];
                for (std::int64_t e = g.adj_offset[node]; e < g.adj_offset[node + 1]; ++e)
                    if (g.node_vertex[g.adj_to[e]] == v) ++in_disk;
            }
            in_disk /= 2;                      // corner-corner edges double-counted
            in_disk += t.degree(v);            // spokes
            EXPECT_LE(in_disk, static_cast<std::int64_t>(
                                   d * (2.0 + std::ceil(std::log2(std::max(2.0, d))))));
        }
    }
}

TEST(ShortestDistance, IdentitySymmetryUnreachable) {
    auto t = build_triangulation(sample_pairing(12, 3));
    auto g = build_graph(t, derive_params(0.1, 10.0), Sparsification::Dense);
    EXPECT_EQ(shortest_distance(g, 2, 2).distance, 0.0);
    auto ab = shortest_distance(g, 0, g.node_count - 1);
    auto ba = shortest_distance(g, g.node_count - 1, 0);
    EXPECT_TRUE(ab.reachable);
    EXPECT_NEAR(ab.distance, ba.distance, 1e-12);

    Pairing two_comps;
    two_comps.n = 2;
    two_comps.match = {3, 4, 5, 0, 1, 2, 9, 10, 11, 6, 7, 8};
    auto t2 = build_triangulation(two_comps);
    auto g2 = build_graph(t2, derive_params(0.1, 10.0), Sparsification::Dense);
    auto cross = shortest_distance(g2, g2.corner_node[0], g2.corner_node[6]);
    EXPECT_FALSE(cross.reachable);
    // restricting to one component removes the unreachable half
    auto g2c = build_graph(t2, derive_params(0.1, 10.0), Sparsification::Dense, 0);
    EXPECT_EQ(g2c.node_count, 7);
}

TEST(CenterSeparation, SpokesForceRadiusSums) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        auto t = build_triangulation(sample_pairing(24, seed * 3 + 2));
        if (!t.connected()) continue;
        auto g = build_graph(t, derive_params(0.1, 10.0), Sparsification::Dyadic);
        for (VertexId v = 0; v < t.vertex_count(); ++v) {
            Dijkstra dij(g);
            const auto& dist = dij.run(g.center_node[v]);
            for (VertexId w = 0; w < t.vertex_count(); ++w) {
                if (w == v) continue;
                EXPECT_GE(dist[g.center_node[w]],
                          g.disk_radius[v] + g.disk_radius[w] - 1e-9);
            }
        }
    }
}

TEST(Diameter, SweepIsALowerBoundAndUsuallyTight) {
    int equal = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto t = build_triangulation(sample_pairing(64, seed * 11 + 4));
        if (!t.connected()) continue;
        auto g = build_graph(t, derive_params(0.1, 10.0), Sparsification::Dyadic);
        auto exact = diameter_exact(g);
        Rng rng(seed);
        auto sweep = diameter_sweep(g, DiameterMode{}.sweep_sources, rng);
        EXPECT_LE(sweep.value, exact.value + 1e-9);
        EXPECT_FALSE(sweep.exact);
        EXPECT_TRUE(exact.exact);
        if (std::fabs(sweep.value - exact.value) < 1e-9) ++equal;
        ++total;
        // spoke-exit bound: diameter >= max over center pairs of R_i + R_j
        double rr = 0.0;
        for (VertexId v = 0; v < t.vertex_count(); ++v)
            for (VertexId w = v + 1; w < t.vertex_count(); ++w)
                rr = std::max(rr, g.disk_radius[v] + g.disk_radius[w]);
        EXPECT_GE(exact.value, rr - 1e-9);
    }
    ASSERT_GT(total, 80);
    EXPECT_GE(equal, (total * 95) / 100);
}

TEST(Diameter, ExactGuardRefusesHugeGraphs) {
    MetricGraph g;
    g.node_count = kExactDiameterNodeGuard + 1;
    EXPECT_THROW(diameter_exact(g), std::length_error);
}

TEST(Diameter, DyadicCloseToDenseOnSmallSamples) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        auto t = build_triangulation(sample_pairing(48, seed * 5 + 7));
        if (!t.connected()) continue;
        auto params = derive_params(0.1, 10.0);
        auto gd = build_graph(t, params, Sparsification::Dense);
        auto gy = build_graph(t, params, Sparsification::Dyadic);
        double dd = diameter_exact(gd).value;
        double dy = diameter_exact(gy).value;
        EXPECT_GE(dy, dd - 1e-9);  // dyadic edges are a subset
        EXPECT_LE(dy, dd + std::max(0.1 * dd, 2.0));
    }
}

TEST(MetricAxioms, SampledTriples) {
    auto t = build_triangulation(sample_pairing(24, 9));
    auto g = build_graph(t, derive_params(0.1, 10.0), Sparsification::Dyadic);
    const int nsrc = std::min(10, g.node_count);
    std::vector<std::vector<double>> dist;
    for (int s = 0; s < nsrc; ++s) {
        Dijkstra dij(g);
        dist.push_back(dij.run(s));
    }
    Rng rng(31);
    for (int i = 0; i < 10000; ++i) {
        int a = static_cast<int>(rng.uniform_below(nsrc));
        int b = static_cast<int>(rng.uniform_below(nsrc));
        int c = static_cast<int>(rng.uniform_below(g.node_count));
        EXPECT_NEAR(dist[a][b], dist[b][a], 1e-12);
        EXPECT_EQ(dist[a][a], 0.0);
        EXPECT_LE(dist[a][c], dist[a][b] + dist[b][c] + 1e-9);
        EXPECT_GE(dist[a][c], 0.0);
    }
}
