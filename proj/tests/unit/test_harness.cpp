#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "rtm/error.hpp"
#include "rtm/harness.hpp"
#include "rtm/records.hpp"
#include "rtm/rng.hpp"

using namespace rtm;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.n_list = {10};
    c.trials = 2;
    c.master_seed = 99;
    c.panels = {Panel::Edges, Panel::Boundary, Panel::Homology, Panel::Dual, Panel::Peeling};
    c.workers = 1;
    return c;
}

SampleRecord without_time(SampleRecord r) {
    r.wall_time_ms = 0;
    return r;
}

std::filesystem::path temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "rtm_harness_test";
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("two trials give two records") {
    const auto r = run_sweep(small_config());
    REQUIRE(r.records.size() == 2);
    CHECK(r.records[0].trial == 0);
    CHECK(r.records[1].trial == 1);
    for (const auto& rec : r.records) {
        CHECK(rec.n == 10);
        CHECK_FALSE(rec.homology_skipped);
        CHECK(rec.b1_rel.has_value());
        CHECK(rec.dual_connected.has_value());
        CHECK(rec.peel_E.has_value());
        CHECK(rec.errors.empty());
        CHECK_NOTHROW(check_conservation(rec));
    }
}

TEST_CASE("sweeps are reproducible regardless of worker count") {
    auto config = small_config();
    config.n_list = {6, 30};
    config.trials = 5;
    const auto a = run_sweep(config);
    config.workers = 3;
    const auto b = run_sweep(config);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(without_time(a.records[i]) == without_time(b.records[i]));
        auto ja = to_json(a.records[i]);
        auto jb = to_json(b.records[i]);
        ja.erase("wall_time_ms");
        jb.erase("wall_time_ms");
        CHECK(ja.dump() == jb.dump());
    }
}

TEST_CASE("trial seeds are derived from master, n and trial") {
    const auto config = small_config();
    const auto r = run_trial(config, 10, 1);
    CHECK(r.seed == derive_seed(99, 10, 1));
    CHECK(derive_seed(99, 10, 1) != derive_seed(99, 11, 1));
    CHECK(derive_seed(99, 10, 1) != derive_seed(98, 10, 1));
}

TEST_CASE("homology is skipped above the cap") {
    auto config = small_config();
    config.homology_max_n = 5;
    const auto r = run_trial(config, 10, 0);
    CHECK(r.homology_skipped);
    CHECK_FALSE(r.b1_rel.has_value());
}

TEST_CASE("homology size cap is recorded, not fatal") {
    auto config = small_config();
    config.homology_nonzero_cap = 10;
    const auto r = run_trial(config, 10, 0);
    CHECK(r.homology_skipped);
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].rfind("size-limit-exceeded", 0) == 0);
}

TEST_CASE("simple conditioning") {
    auto config = small_config();
    config.conditioning = Conditioning::Simple;
    const auto r = run_trial(config, 12, 0);
    CHECK(r.conditioning == "simple");
    CHECK(r.generic_dual_simple);
    CHECK(*r.dual_simple);
    config.n_list = {4};
    CHECK_THROWS_AS(config.validate(), Error);
}

TEST_CASE("record json round trip") {
    const auto config = small_config();
    auto r = run_trial(config, 10, 1);
    r.torsion_factors = {"2", "123456789012345678901234567890"};
    r.errors = {"no-convergence: example"};
    const auto j = to_json(r);
    CHECK(j.at("edge_histogram").is_array());
    CHECK(j.at("genericity").contains("dual_simple"));
    CHECK(j.at("torsion_factors")[0] == 2);
    CHECK(record_from_json(j) == r);
    std::stringstream ss;
    write_records(ss, {r, r});
    const auto back = read_records(ss);
    REQUIRE(back.size() == 2);
    CHECK(back[1] == r);
    std::istringstream bad("{not json}\n");
    CHECK_THROWS_AS(read_records(bad), Error);
}

TEST_CASE("conservation violations are reported") {
    auto r = run_trial(small_config(), 10, 0);
    r.chi_boundary += 2;
    CHECK_THROWS_AS(check_conservation(r), Error);
    r = run_trial(small_config(), 10, 0);
    r.edge_histogram[0].count += 1;
    CHECK_THROWS_AS(check_conservation(r), Error);
}

TEST_CASE("config parsing") {
    const auto j = nlohmann::json::parse(R"({
        "n_list": [100, 1000], "trials": 3, "master_seed": 5,
        "conditioning": "simple", "panels": ["edges", "dual"],
        "outputs": {"records": "r.jsonl"}, "tolerances": {"slope_low": 0.45}
    })");
    const auto c = config_from_json(j);
    CHECK(c.n_list == std::vector<std::int64_t>{100, 1000});
    CHECK(c.trials == 3);
    CHECK(c.conditioning == Conditioning::Simple);
    CHECK(c.has(Panel::Dual));
    CHECK_FALSE(c.has(Panel::Homology));
    CHECK(c.records_path == "r.jsonl");
    CHECK(c.tolerances.slope_low == 0.45);
    CHECK(config_from_json(to_json(c)).n_list == c.n_list);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"n_list": [], "trials": 1})")), Error);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"n_list": [3], "trials": 0})")), Error);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"trials": 1})")), Error);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"n_list": [3], "trials": 1, "panels": ["x"]})")), Error);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), Error);
}

TEST_CASE("summary statistics") {
    const auto s = summarize_values({4, 1, 3, 2, 5});
    CHECK(s.count == 5);
    CHECK(s.mean == 3);
    CHECK(s.variance == doctest::Approx(2.5));
    CHECK(s.min == 1);
    CHECK(s.q25 == 2);
    CHECK(s.median == 3);
    CHECK(s.q75 == 4);
    CHECK(s.max == 5);
    CHECK(summarize_values({1, 2}).median == 1.5);
    const auto reg = fit_line({0, 1, 2, 3}, {1, 3, 5, 7});
    CHECK(reg.slope == doctest::Approx(2));
    CHECK(reg.intercept == doctest::Approx(1));
    CHECK(reg.r_squared == doctest::Approx(1));
}

TEST_CASE("aggregation does not depend on record order") {
    auto config = small_config();
    config.n_list = {8, 16, 32};
    config.trials = 4;
    auto records = run_sweep(config).records;
    const auto a = aggregate(records);
    std::reverse(records.begin(), records.end());
    const auto b = aggregate(records);
    for (auto n : a.n_values())
        for (const auto& [name, s] : a.by_n.at(n)) {
            const auto* t = b.find(n, name);
            REQUIRE(t != nullptr);
            CHECK(t->mean == s.mean);
            CHECK(t->variance == s.variance);
        }
    REQUIRE(a.edge_regression.has_value());
    CHECK(a.edge_regression->slope == b.edge_regression->slope);
}

TEST_CASE("sweep writes its outputs") {
    const auto dir = temp_dir();
    auto config = small_config();
    config.n_list = {10, 40, 120};
    config.trials = 3;
    config.records_path = (dir / "records.jsonl").string();
    config.aggregate_path = (dir / "aggregate.csv").string();
    config.report_path = (dir / "report.txt").string();
    run_sweep(config);
    CHECK(read_records_file(config.records_path).size() == 9);
    std::ifstream agg(config.aggregate_path);
    std::string header;
    std::getline(agg, header);
    CHECK(header == "n,statistic,count,mean,variance,min,q25,median,q75,max");
    std::ifstream report(config.report_path);
    std::stringstream text;
    text << report.rdbuf();
    CHECK(text.str().find("slope of mean E against ln n") != std::string::npos);

    config.records_path = (dir / "missing" / "records.jsonl").string();
    CHECK_THROWS_AS(run_sweep(config), Error);
}

TEST_CASE("theory comparison needs three sizes over a decade") {
    auto config = small_config();
    config.panels = {Panel::Edges, Panel::Boundary};
    config.n_list = {10, 20};
    config.trials = 3;
    CHECK_THROWS_AS(compare_theory(run_sweep(config).stats), Error);
    config.n_list = {10, 20, 40};
    CHECK_THROWS_AS(compare_theory(run_sweep(config).stats), Error);
    config.n_list = {10, 40, 100};
    const auto report = compare_theory(run_sweep(config).stats);
    CHECK(report.checks.size() >= 5);
}

TEST_CASE("a factor-2 error in the simple-edge law is caught") {
    AggregateStats stats;
    for (std::int64_t n : {100, 1000, 10000}) {
        stats.by_n[n]["E"] = {100, 0.5 * std::log(static_cast<double>(n)), 0, 0, 0, 0, 0, 0};
        stats.by_n[n]["V_is_1"] = {100, 0.95, 0, 0, 0, 0, 0, 0};
        stats.by_n[n]["genus_over_n"] = {100, 0.99, 0, 0, 0, 0, 0, 0};
        stats.by_n[n]["E_KL"] = {100, 0.01, 0, 0, 0, 0, 0, 0};
        stats.by_n[n]["generic_all"] = {100, 0.99, 0, 0, 0, 0, 0, 0};
        for (int k = 1; k <= 10; ++k)
            stats.by_n[n]["E_simple_" + std::to_string(k)] = {100, 1.0 / k, 0, 0, 0, 0, 0, 0};
    }
    stats.edge_regression = Regression{0.5, 0.0, 1.0};
    const auto report = compare_theory(stats);
    CHECK_FALSE(report.all_pass());
    int failing = 0;
    for (const auto& c : report.checks) failing += c.pass ? 0 : 1;
    CHECK(failing == 10);
}
