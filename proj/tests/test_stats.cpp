#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "belyi/stats.hpp"
#include "support/test_util.hpp"

using namespace belyi;

namespace {

StudyConfig small_config(std::vector<std::int32_t> ns, std::int32_t trials, std::uint64_t seed) {
    StudyConfig cfg;
    cfg.n_values = std::move(ns);
    cfg.trials = trials;
    cfg.base_seed = seed;
    return cfg;
}

}  // namespace

TEST(PerTrialSeeds, PairwiseDistinctAcrossGrid) {
    std::set<std::uint64_t> seen;
    for (std::int32_t n : {5, 64, 256, 1024, 4096}) {
        for (std::int32_t trial = 0; trial < 2000; ++trial)
            EXPECT_TRUE(seen.insert(Rng::derive_seed(42, n, trial)).second);
    }
    EXPECT_NE(Rng::derive_seed(1, 5, 0), Rng::derive_seed(2, 5, 0));
}

TEST(Reproducibility, ThreadCountDoesNotChangeRows) {
    StudyConfig cfg = small_config({8, 16}, 25, 99);
    cfg.threads = 1;
    auto rep1 = scaling_study(cfg);
    cfg.threads = 8;
    auto rep8 = scaling_study(cfg);
    EXPECT_EQ(csv_text(rep1), csv_text(rep8));
    // the summary is identical apart from wall-clock timing
    auto scrub = [](json j) {
        for (auto& e : j["per_n"]) e.erase("mean_trial_ms");
        return j.dump();
    };
    EXPECT_EQ(scrub(rep1.summary), scrub(rep8.summary));

    cfg.threads = 3;
    auto t1 = topology_study(cfg);
    cfg.threads = 1;
    auto t2 = topology_study(cfg);
    EXPECT_EQ(csv_text(t1), csv_text(t2));
}

TEST(TopologyStudy, MatchesEnumerationAtN1) {
    StudyConfig cfg = small_config({1}, 6000, 7);
    cfg.threads = 2;
    auto rep = topology_study(cfg);
    // exact law over the 15 pairings
    std::int64_t torus = 0, total = 0;
    enumerate_pairings(1, [&](const Pairing& p) {
        ++total;
        if (build_triangulation(p).vertex_count() == 1) ++torus;
    });
    EXPECT_EQ(total, 15);
    EXPECT_EQ(torus, 3);
    double expected = cfg.trials * static_cast<double>(torus) / total;
    double sigma = std::sqrt(cfg.trials * 0.2 * 0.8);
    double observed = rep.summary["per_n"][0]["one_vertex_hits"].get<double>();
    EXPECT_NEAR(observed, expected, 3.0 * sigma);
    EXPECT_DOUBLE_EQ(rep.summary["per_n"][0]["connected_freq"].get<double>(), 1.0);
}

TEST(DegreeStudy, FractionsAreConsistent) {
    StudyConfig cfg = small_config({64}, 50, 3);
    auto rep = degree_study(cfg);
    ASSERT_EQ(rep.rows.size(), 50u);
    for (const auto& row : rep.rows) {
        double f1 = std::stod(row[5]), f2 = std::stod(row[6]);
        EXPECT_GE(f1, f2);
        EXPECT_LE(f1 + f2, 1.0 + 1e-12);
        EXPECT_GT(f1, 0.0);
    }
    // aggregates recomputable from the emitted rows
    double mean = 0.0;
    for (const auto& row : rep.rows) mean += std::stod(row[5]);
    mean /= rep.rows.size();
    EXPECT_NEAR(mean, rep.summary["per_n"][0]["mean_D1_frac"].get<double>(), 1e-12);
}

TEST(PermutationOracle, LongestCycleFractionNearGolombDickman) {
    double mean = 0.0;
    const int trials = 400;
    for (int i = 0; i < trials; ++i)
        mean += permutation_longest_cycle_fraction(4096, 1000 + i);
    mean /= trials;
    EXPECT_NEAR(mean, 0.6243, 0.02);  // Golomb-Dickman constant
}

TEST(ScalingStudy, RowsCarryChecks) {
    StudyConfig cfg = small_config({32, 64}, 10, 17);
    cfg.threads = 2;
    auto rep = scaling_study(cfg);
    ASSERT_EQ(rep.rows.size(), 20u);
    for (const auto& row : rep.rows) {
        ASSERT_EQ(row.size(), rep.header.size());
        EXPECT_EQ(row[11], "1");  // eq2_ok
        EXPECT_EQ(row[12], "1");  // censep_ok
        EXPECT_GT(std::stod(row[7]), 0.0);
    }
    EXPECT_EQ(rep.summary["per_n"].size(), 2u);
}

TEST(PropositionStudy, OracleCleanOnSmallRun) {
    StudyConfig cfg = small_config({60}, 30, 23);
    cfg.threads = 2;
    auto rep = proposition_study(cfg, 0.1);
    for (const auto& row : rep.rows) {
        EXPECT_EQ(row[4], "1");
        EXPECT_EQ(row[6], "1");
        EXPECT_EQ(row[8], "1");
    }
    EXPECT_THROW(proposition_study(cfg, 0.2), std::invalid_argument);
    auto tiny = rep.summary["per_n"][0]["tiny"];
    EXPECT_EQ(tiny["oracle_discrepancies"].get<std::int64_t>(), 0);
}

TEST(ConjectureProbe, ConditioningHolds) {
    StudyConfig cfg = small_config({9}, 8, 5);
    auto rep = conjecture_probe(cfg);
    for (const auto& row : rep.rows) {
        EXPECT_EQ(row[4], "1");                          // V
        EXPECT_EQ(row[5], std::to_string((9 + 1) / 2));  // genus
    }
    StudyConfig bad = small_config({10}, 2, 5);
    EXPECT_THROW(conjecture_probe(bad), std::invalid_argument);
}

TEST(ConjectureProbe, ReportsRatioAtModerateSize) {
    StudyConfig cfg = small_config({101}, 4, 11);
    cfg.threads = 2;
    auto rep = conjecture_probe(cfg);
    ASSERT_EQ(rep.rows.size(), 4u);
    auto entry = rep.summary["per_n"][0];
    EXPECT_EQ(entry["expected_genus"].get<int>(), 51);
    EXPECT_GT(entry["mean_ratio"].get<double>(), 0.0);
    EXPECT_GT(entry["mean_rejections"].get<double>(), 1.0);
    for (const auto& row : rep.rows) EXPECT_EQ(row[5], "51");
}

TEST(TopologyStudy, MeanGenusTracksHalfN) {
    StudyConfig cfg = small_config({1000}, 100, 13);
    cfg.threads = 2;
    auto rep = topology_study(cfg);
    double mean_genus = rep.summary["per_n"][0]["mean_genus"].get<double>();
    double normalized = mean_genus / (1000.0 / 2.0);
    EXPECT_GE(normalized, 0.9);  // V ~ log n keeps the mean slightly below n/2
    EXPECT_LE(normalized, 1.0);
}

TEST(DegreeStudy, SecondDegreeQuantilesReported) {
    StudyConfig cfg = small_config({512}, 60, 29);
    cfg.threads = 2;
    auto rep = degree_study(cfg);
    auto q = rep.summary["per_n"][0]["D2_frac_quantiles"];
    // the second-ranked degree is a positive fraction of 6n in every sample
    EXPECT_GT(q["min"].get<double>(), 0.0);
    EXPECT_GT(q["median"].get<double>(), 0.01);
}

TEST(ReportIO, AtomicCsvAndJsonRoundTrip) {
    StudyConfig cfg = small_config({16}, 5, 77);
    cfg.out_path = ::testing::TempDir() + "/study.csv";
    auto rep = topology_study(cfg);
    write_report(rep, cfg.out_path);
    std::ifstream in(cfg.out_path);
    ASSERT_TRUE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), csv_text(rep));
    std::ifstream js(cfg.out_path + ".summary.json");
    ASSERT_TRUE(js.good());
    json parsed = json::parse(js);
    EXPECT_EQ(parsed["study"], "topology");
}
