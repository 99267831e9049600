#include <doctest.h>

#include <cmath>
#include <string>

#include "krec/events.hpp"
#include "krec/experiment.hpp"
#include "krec/rng.hpp"

using namespace krec;

namespace {

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size()))
        ++n;
    return n;
}

} // namespace

TEST_CASE("measure names round trip") {
    const Measure all[] = {Measure::Uniqueness, Measure::EventA, Measure::EventB,
                           Measure::EventC,     Measure::EventD, Measure::EventH,
                           Measure::V,          Measure::U,      Measure::RepeatFree};
    for (Measure m : all) {
        auto back = measure_from_name(measure_name(m));
        REQUIRE(back.has_value());
        CHECK(*back == m);
    }
    CHECK(std::string(measure_name(Measure::EventA)) == "eventA");
    CHECK(std::string(measure_name(Measure::RepeatFree)) == "repeat_free");
    CHECK(std::string(measure_name(Measure::V)) == "V");
    CHECK(!measure_from_name("eventX").has_value());
}

TEST_CASE("config parses scalars, arrays and defaults") {
    ExperimentConfig c = ExperimentConfig::from_json(
        R"({"n":[32,64],"alpha":0.5,"beta":[1.5,2.0],"trials":7,"seed":9,)"
        R"("max_expansions":5000,"max_solutions":3,"measures":["eventA","V"]})");
    CHECK(c.n_values == std::vector<unsigned>{32, 64});
    CHECK(c.alphas == std::vector<double>{0.5});
    CHECK(c.betas == std::vector<double>{1.5, 2.0});
    CHECK(c.trials == 7);
    CHECK(c.seed == 9);
    CHECK(c.budget.max_expansions == 5000);
    CHECK(c.budget.max_solutions == 3);
    REQUIRE(c.measures.size() == 2);
    CHECK(c.measures[0] == Measure::EventA);
    CHECK(c.measures[1] == Measure::V);

    ExperimentConfig d = ExperimentConfig::from_json(R"({"n":16,"alpha":0,"beta":1})");
    CHECK(d.trials == 100);
    CHECK(d.seed == 1);
    REQUIRE(d.measures.size() == 1);
    CHECK(d.measures[0] == Measure::Uniqueness);

    CHECK_THROWS(ExperimentConfig::from_json(R"({"alpha":0,"beta":1})"));
    CHECK_THROWS(ExperimentConfig::from_json(R"({"n":16,"alpha":0,"beta":1,"measures":["what"]})"));

    ExperimentConfig rt = ExperimentConfig::from_json(c.to_json());
    CHECK(rt.n_values == c.n_values);
    CHECK(rt.alphas == c.alphas);
    CHECK(rt.betas == c.betas);
    CHECK(rt.trials == c.trials);
    CHECK(rt.seed == c.seed);
    CHECK(rt.budget.max_expansions == c.budget.max_expansions);
    CHECK(rt.measures == c.measures);
}

TEST_CASE("cell reports are independent of thread count") {
    Params p = make_params(32, 2, 8);
    const std::vector<Measure> ms = {Measure::Uniqueness, Measure::EventA, Measure::V,
                                     Measure::RepeatFree};
    CellReport a = run_cell(p, 24, 7, ms, Budget{}, 1);
    CellReport b = run_cell(p, 24, 7, ms, Budget{}, 4);
    REQUIRE(a.stats.size() == 5); // uniqueness expands to nonunique + unknown
    REQUIRE(b.stats.size() == 5);
    CHECK(a.stats[0].label == "nonunique");
    CHECK(a.stats[1].label == "unknown");
    CHECK(a.stats[2].label == "eventA");
    for (std::size_t i = 0; i < a.stats.size(); ++i) {
        CHECK(a.stats[i].label == b.stats[i].label);
        CHECK(a.stats[i].count == b.stats[i].count);
        CHECK(a.stats[i].estimate == b.stats[i].estimate);
        CHECK(a.stats[i].se == b.stats[i].se);
    }
}

TEST_CASE("trial t draws its sources from derive_seed(seed, t)") {
    Params p = make_params(16, 2, 4);
    CellReport r = run_cell(p, 50, 11, {Measure::EventA}, Budget{}, 2);
    std::uint64_t want = 0;
    for (std::uint64_t t = 0; t < 50; ++t)
        if (detect_A(generate_sources(p, derive_seed(11, t)), 4)) ++want;
    REQUIRE(r.stats.size() == 1);
    CHECK(r.stats[0].count == want);
    CHECK(r.stats[0].estimate == static_cast<double>(want) / 50.0);
    const double q = static_cast<double>(want) / 50.0;
    const double se = // rule of three at the extremes, Wald otherwise
        (want == 0 || want == 50) ? 1.0 / 50.0 : std::sqrt(q * (1 - q) / 50.0);
    CHECK(r.stats[0].se == doctest::Approx(se).epsilon(1e-12));
}

TEST_CASE("counting measures report sums and means") {
    Params p = make_params(16, 2, 4);
    CellReport r = run_cell(p, 40, 3, {Measure::V}, Budget{}, 1);
    std::uint64_t total = 0;
    for (std::uint64_t t = 0; t < 40; ++t)
        total += v_statistic(generate_sources(p, derive_seed(3, t)), 4);
    REQUIRE(r.stats.size() == 1);
    CHECK(r.stats[0].count == total);
    CHECK(r.stats[0].estimate == doctest::Approx(static_cast<double>(total) / 40.0));
    CHECK(r.stats[0].se >= 0.0);
}

TEST_CASE("grids mark impossible cells as skipped and emit stable CSV") {
    ExperimentConfig cfg = ExperimentConfig::from_json(
        R"({"n":4096,"alpha":0.3,"beta":[1.2,6.0],"trials":2,"seed":5,"measures":["eventA"]})");
    std::vector<CellReport> reports = run_grid(cfg, 1);
    REQUIRE(reports.size() == 2);
    CHECK(!reports[0].skipped);
    CHECK(reports[0].k == 14);
    CHECK(reports[1].skipped); // beta=6 wants k=72, past the word-pack cap

    std::string csv = emit_csv(reports);
    CHECK(csv.rfind("alpha,beta,n,m,k,trials,measure,count,estimate,stderr,verdict\n", 0) == 0);
    CHECK(count_occurrences(csv, "\n") == 3);
    CHECK(csv.find(",skipped,0,0,0,") != std::string::npos);
    CHECK(csv.find(",infeasible\n") != std::string::npos); // (0.3, 1.2)
    CHECK(csv.find(",feasible\n") != std::string::npos);   // (0.3, 6.0), skipped

    // byte-identical across runs and thread counts
    CHECK(emit_csv(run_grid(cfg, 4)) == csv);
}

TEST_CASE("heatmap draws cells plus the two region boundaries") {
    ExperimentConfig cfg = ExperimentConfig::from_json(
        R"({"n":16,"alpha":[0.0,0.5],"beta":[1.0,2.0],"trials":3,"seed":2,)"
        R"("measures":["uniqueness"]})");
    std::vector<CellReport> reports = run_grid(cfg, 2);
    REQUIRE(reports.size() == 4);
    std::string svg = emit_svg_heatmap(reports, "nonunique");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count_occurrences(svg, "<polyline") == 2);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    CHECK(count_occurrences(svg, "<rect") >= 4);
}
