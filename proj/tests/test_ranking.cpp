#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kgb/ranking.hpp"
#include "kgb/rng.hpp"

using namespace kgb;

namespace {

MetricReport baseline_report(const std::string& name, DataFormat format) {
    MetricReport r;
    r.pipeline = name;
    r.increment = 3;
    r.source_format = format;
    r.stats.fact_count = 100;
    r.stats.density = 0.01;
    r.anchors.fact_count = 100;
    r.anchors.density = 0.01;
    r.semantic = SemReport{};  // all ones
    r.reference.kg_fuzzy_entities = {1.0, 1.0};
    r.reference.source_entity_recall_fuzzy = 1.0;
    r.reference.match_combined = PrecisionRecall{1.0, 1.0};
    r.reference.relation_linking_accuracy = 1.0;
    r.reference.entity_linking_recall = 1.0;
    r.cumulative_duration_seconds = 10.0;
    return r;
}

}  // namespace

TEST_CASE("normalize") {
    CHECK(normalize_count(50, 100) == doctest::Approx(0.5));
    CHECK(normalize_count(120, 100) == 1.0);  // clamped
    CHECK(normalize_resource(65.0, 65.0) == 1.0);
    CHECK(normalize_resource(130.0, 65.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(normalize_count(1, 0), Error);
    CHECK_THROWS_AS(normalize_resource(0.0, 1.0), Error);
    CHECK_THROWS_AS(normalize_resource(1.0, 0.0), Error);
}

TEST_CASE("builtin schemes carry the published weights") {
    auto expect = [](const char* name, double a, double b, double c, double d) {
        const WeightScheme& s = scheme_by_name(name);
        CHECK(s.alpha == a);
        CHECK(s.beta == b);
        CHECK(s.gamma == c);
        CHECK(s.delta == d);
        s.validate();
    };
    expect("equal", 0.25, 0.25, 0.25, 0.25);
    expect("quantity", 0.50, 0.10, 0.10, 0.30);
    expect("quality", 0.0, 0.50, 0.50, 0.0);
    expect("reference", 0.0, 0.20, 0.80, 0.0);
    expect("efficiency", 0.20, 0.20, 0.20, 0.40);
    CHECK(builtin_schemes().size() == 5);
    CHECK_THROWS_AS(scheme_by_name("nonsense"), Error);
    WeightScheme bad{"bad", 0.5, 0.5, 0.5, 0.5};
    CHECK_THROWS_AS(bad.validate(), Error);
    WeightScheme negative{"neg", 1.5, -0.5, 0.0, 0.0};
    CHECK_THROWS_AS(negative.validate(), Error);
}

TEST_CASE("group_scores") {
    CohortMinima minima;
    minima.duration_seconds = 10.0;

    SUBCASE("perfect and cheapest scores (1,1,1,1)") {
        bool duration_only = false;
        GroupScores g = group_scores(baseline_report("p", DataFormat::RDF), minima, &duration_only);
        CHECK(g.size == 1.0);
        CHECK(g.consistency == 1.0);
        CHECK(g.integration == 1.0);
        CHECK(g.efficiency == 1.0);
        CHECK(duration_only);
    }

    SUBCASE("GM2 is the four-term mean with paired domain/range and literal scores") {
        MetricReport r = baseline_report("p", DataFormat::RDF);
        r.semantic.disjoint_types = 1.0;
        r.semantic.domain = 0.8;
        r.semantic.range = 0.9;
        r.semantic.direction = 1.0;
        r.semantic.literal_type = 0.9;
        r.semantic.literal_format = 1.0;
        GroupScores g = group_scores(r, minima, nullptr);
        double expected = (1.0 + (0.8 + 0.9) / 2.0 + 1.0 + (0.9 + 1.0) / 2.0) / 4.0;
        CHECK(g.consistency == doctest::Approx(expected).epsilon(1e-12));
    }

    SUBCASE("GM1 averages normalized fact count and density") {
        MetricReport r = baseline_report("p", DataFormat::RDF);
        r.stats.fact_count = 50;   // ratio 0.5
        r.stats.density = 0.02;    // ratio clamps at 1
        GroupScores g = group_scores(r, minima, nullptr);
        CHECK(g.size == doctest::Approx(0.75));
    }

    SUBCASE("GM3 task slot switches on the source format") {
        MetricReport r = baseline_report("p", DataFormat::RDF);
        r.reference.match_combined = PrecisionRecall{1.0, 0.5};  // f1 = 2/3
        r.reference.kg_fuzzy_entities = {1.0, 0.5};
        r.reference.source_entity_recall_fuzzy = 0.8;
        GroupScores g = group_scores(r, minima, nullptr);
        double expected = (2.0 / 3.0 + 0.8 + 2.0 / 3.0) / 3.0;
        CHECK(g.integration == doctest::Approx(expected).epsilon(1e-12));

        MetricReport j = baseline_report("p", DataFormat::JSON);
        j.reference.relation_linking_accuracy = 0.25;
        CHECK(group_scores(j, minima, nullptr).integration ==
              doctest::Approx((1.0 + 1.0 + 0.25) / 3.0));

        MetricReport t = baseline_report("p", DataFormat::TEXT);
        t.reference.entity_linking_recall = 0.4;
        t.reference.match_combined.reset();  // text reports carry no matching metrics
        CHECK(group_scores(t, minima, nullptr).integration ==
              doctest::Approx((1.0 + 1.0 + 0.4) / 3.0));
    }

    SUBCASE("missing required sub-metric is an error") {
        MetricReport r = baseline_report("p", DataFormat::RDF);
        r.reference.match_combined.reset();
        CHECK_THROWS_AS(group_scores(r, minima, nullptr), Error);

        MetricReport j = baseline_report("p", DataFormat::JSON);
        j.reference.relation_linking_accuracy.reset();
        CHECK_THROWS_AS(group_scores(j, minima, nullptr), Error);
    }

    SUBCASE("memory joins GM4 when present in report and cohort") {
        MetricReport r = baseline_report("p", DataFormat::RDF);
        r.peak_memory_bytes = 2048;
        CohortMinima with_mem = minima;
        with_mem.peak_memory_bytes = 1024.0;
        bool duration_only = true;
        GroupScores g = group_scores(r, with_mem, &duration_only);
        CHECK(!duration_only);
        CHECK(g.efficiency == doctest::Approx((1.0 + 0.5) / 2.0));
    }
}

TEST_CASE("total_score reproduces hand-computed dot products") {
    GroupScores g{0.9, 0.8, 0.7, 0.6};
    CHECK(std::abs(total_score(g, scheme_by_name("equal")) - 0.75) <= 1e-12);
    CHECK(std::abs(total_score(g, scheme_by_name("quantity")) -
                   (0.5 * 0.9 + 0.1 * 0.8 + 0.1 * 0.7 + 0.3 * 0.6)) <= 1e-12);
    CHECK(std::abs(total_score(g, scheme_by_name("quality")) - (0.5 * 0.8 + 0.5 * 0.7)) <= 1e-12);
    CHECK(std::abs(total_score(g, scheme_by_name("reference")) - (0.2 * 0.8 + 0.8 * 0.7)) <= 1e-12);
    CHECK(std::abs(total_score(g, scheme_by_name("efficiency")) -
                   (0.2 * 0.9 + 0.2 * 0.8 + 0.2 * 0.7 + 0.4 * 0.6)) <= 1e-12);

    GroupScores uniform{0.9, 0.9, 0.9, 0.9};
    CHECK(total_score(uniform, scheme_by_name("equal")) == doctest::Approx(0.9));
    GroupScores spike{1.0, 0.0, 0.0, 0.0};
    CHECK(total_score(spike, scheme_by_name("quantity")) == doctest::Approx(0.5));
}

TEST_CASE("monotonicity in every group metric") {
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        GroupScores g{rng.real(), rng.real(), rng.real(), rng.real()};
        const WeightScheme& scheme = builtin_schemes()[rng.below(5)];
        double before = total_score(g, scheme);
        GroupScores bumped = g;
        double delta = rng.real() * 0.5;
        switch (rng.below(4)) {
            case 0: bumped.size = std::min(1.0, bumped.size + delta); break;
            case 1: bumped.consistency = std::min(1.0, bumped.consistency + delta); break;
            case 2: bumped.integration = std::min(1.0, bumped.integration + delta); break;
            default: bumped.efficiency = std::min(1.0, bumped.efficiency + delta); break;
        }
        CHECK(total_score(bumped, scheme) >= before - 1e-15);
    }
}

TEST_CASE("efficiency normalization is invariant under uniform duration scaling") {
    Rng rng(9);
    std::vector<double> durations = {12.0, 48.0, 96.0, 7.5};
    for (double scale : {2.0, 10.0, 0.5}) {
        for (double d : durations) {
            double min_d = *std::min_element(durations.begin(), durations.end());
            CHECK(normalize_resource(d * scale, min_d * scale) ==
                  doctest::Approx(normalize_resource(d, min_d)).epsilon(1e-12));
        }
    }
    (void)rng;
}

TEST_CASE("rank_pipelines sorts descending with name tie-breaks") {
    std::vector<PipelineScore> scores = {
        {"b_pipeline", {}, 0.5}, {"a_pipeline", {}, 0.5}, {"c_pipeline", {}, 0.9}};
    auto ranked = rank_pipelines(scores);
    REQUIRE(ranked.size() == 3);
    CHECK(ranked[0].pipeline == "c_pipeline");
    CHECK(ranked[1].pipeline == "a_pipeline");
    CHECK(ranked[2].pipeline == "b_pipeline");

    // Output is a permutation of the input.
    std::set<std::string> names;
    for (const auto& s : ranked) names.insert(s.pipeline);
    CHECK(names.size() == 3);
}

TEST_CASE("mixed cohorts rank with per-report GM4 degradation") {
    MetricReport with_mem = baseline_report("cmd_pipeline", DataFormat::RDF);
    with_mem.cumulative_duration_seconds = 20.0;
    with_mem.peak_memory_bytes = 4096;
    MetricReport without_mem = baseline_report("builtin_pipeline", DataFormat::RDF);
    without_mem.cumulative_duration_seconds = 10.0;

    CohortMinima minima = cohort_minima({with_mem, without_mem});
    bool flag_mem = true, flag_builtin = false;
    GroupScores a = group_scores(with_mem, minima, &flag_mem);
    GroupScores b = group_scores(without_mem, minima, &flag_builtin);
    CHECK(!flag_mem);
    CHECK(flag_builtin);
    CHECK(a.efficiency == doctest::Approx((0.5 + 1.0) / 2.0));
    CHECK(b.efficiency == doctest::Approx(1.0));

    auto ranked = rank_pipelines({{"cmd_pipeline", a, total_score(a, scheme_by_name("equal"))},
                                  {"builtin_pipeline", b, total_score(b, scheme_by_name("equal"))}});
    CHECK(ranked.size() == 2);
}

TEST_CASE("cohort minima") {
    std::vector<MetricReport> cohort;
    CHECK_THROWS_AS(cohort_minima(cohort), Error);

    MetricReport a = baseline_report("a", DataFormat::RDF);
    a.cumulative_duration_seconds = 5.0;
    MetricReport b = baseline_report("b", DataFormat::RDF);
    b.cumulative_duration_seconds = 3.0;
    b.peak_memory_bytes = 4096;
    cohort = {a, b};
    CohortMinima minima = cohort_minima(cohort);
    CHECK(minima.duration_seconds == doctest::Approx(3.0));
    REQUIRE(minima.peak_memory_bytes.has_value());
    CHECK(*minima.peak_memory_bytes == doctest::Approx(4096));
}
