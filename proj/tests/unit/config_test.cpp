#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "rwadic/config.hpp"
#include "rwadic/errors.hpp"
#include "rwadic/suites.hpp"

using namespace rwadic;

namespace {

const char* kMinimal = R"({
    "transition_matrix": [[1, 1], [1, 0]],
    "cocycle": {
        "range": 1,
        "group": {"lattice_rank": 1, "dimension": 1},
        "entries": [{"word": [0], "value": [0]}, {"word": [1], "value": [1]}]
    },
    "window": {"lattice": [[0]]},
    "simulation": {"orbits": 4, "n_list": [10, 20], "seed": 3},
    "checks": ["tms"]
})";

std::string patched(const std::string& from, const std::string& to) {
    std::string s = kMinimal;
    auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    s.replace(pos, from.size(), to);
    return s;
}

}  // namespace

TEST_CASE("minimal config parses with defaults") {
    ExperimentConfig cfg = parse_config(kMinimal);
    CHECK(cfg.transition_matrix.size() == 2);
    CHECK(cfg.range == 1);
    CHECK(cfg.group.lattice_rank == 1);
    CHECK(cfg.orbits == 4);
    CHECK(cfg.seed == 3);
    CHECK(cfg.threads == 1);
    CHECK(cfg.fiber_cap == 24);
    CHECK(cfg.output_dir == "out");
    CHECK_FALSE(cfg.assert_aperiodic);
    CHECK(cfg.checks == std::vector<std::string>{"tms"});
    CHECK(cfg.hash.size() == 16);
    CHECK(cfg.suites.lemma_points == 25);
    CHECK(cfg.suites.star_radius == doctest::Approx(3.0));

    auto ts = cfg.make_system();
    CHECK(ts->alphabet_size() == 2);
    Cocycle f = cfg.make_cocycle(ts);
    CHECK(f.range() == 1);
    Window I = cfg.make_window();
    CHECK(I.haar_mass() == doctest::Approx(1.0));
}

TEST_CASE("hash covers results-affecting fields only") {
    ExperimentConfig base = parse_config(kMinimal);

    ExperimentConfig t = base;
    t.threads = 8;
    rehash(t);
    CHECK(t.hash == base.hash);

    ExperimentConfig o = base;
    o.output_dir = "elsewhere";
    rehash(o);
    CHECK(o.hash == base.hash);

    ExperimentConfig s = base;
    s.seed = 4;
    rehash(s);
    CHECK(s.hash != base.hash);

    ExperimentConfig m = base;
    m.transition_matrix[1][1] = 1;
    rehash(m);
    CHECK(m.hash != base.hash);

    ExperimentConfig n = base;
    n.n_list.push_back(40);
    rehash(n);
    CHECK(n.hash != base.hash);

    ExperimentConfig u = base;
    u.suites.uniform_depth = 5;
    rehash(u);
    CHECK(u.hash != base.hash);
}

TEST_CASE("parser failures carry their location") {
    CHECK_THROWS_WITH_AS(parse_config("{"), doctest::Contains("parse error"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("{}"), doctest::Contains("transition_matrix"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(patched("[1, 0]", "[1, 2]")),
                         doctest::Contains("row 1, column 1"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(patched("[[1, 1], [1, 0]]", "[[1, 1], [1, 0], [0, 1]]")),
                         doctest::Contains("row 0"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(patched("\"seed\": 3", "\"seed\": -3")),
                         doctest::Contains("seed"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(patched("\"orbits\": 4, ", "")),
                         doctest::Contains("orbits"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(patched("[10, 20]", "[20, 10]")),
                         doctest::Contains("increasing"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(patched("[\"tms\"]", "[]")), doctest::Contains("suite"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(patched("\"value\": [0]", "\"value\": [0, 4]")),
                         doctest::Contains("value"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/path.json"), ConfigError);
}

TEST_CASE("suite overrides are honoured") {
    std::string s = patched("\"checks\": [\"tms\"]",
                            "\"checks\": [\"tms\"], \"suites\": {\"lemma_n\": [3, 5, 7], "
                            "\"oracle_samples\": 11, \"star_radius\": 2.5}");
    ExperimentConfig cfg = parse_config(s);
    CHECK(cfg.suites.lemma_n == std::vector<std::int64_t>{3, 5, 7});
    CHECK(cfg.suites.oracle_samples == 11);
    CHECK(cfg.suites.star_radius == doctest::Approx(2.5));
    ExperimentConfig base = parse_config(kMinimal);
    CHECK(cfg.hash != base.hash);
}

TEST_CASE("suite registry") {
    CHECK(suite_names().size() == 13);
    CHECK(suite_names().front() == "tms");
    CHECK(suite_names().back() == "compact");
    CHECK(known_suite("gamma"));
    CHECK_FALSE(known_suite("nope"));
    CHECK_THROWS_AS(describe_suite("nope"), UnknownSuiteError);
    CHECK(describe_suite("star").find("⊛") != std::string::npos);
    for (const auto& name : suite_names()) CHECK(!describe_suite(name).empty());
}

TEST_CASE("single suite runs standalone") {
    ExperimentConfig cfg = parse_config(kMinimal);
    SuiteResult r = run_suite("tms", cfg);
    CHECK(r.passed);
    CHECK(r.name == "tms");
    REQUIRE(!r.tables.empty());
    CHECK(r.tables[0].second.find(cfg.hash) != std::string::npos);
    CHECK_THROWS_AS(run_suite("nope", cfg), UnknownSuiteError);
}

TEST_CASE("experiment run writes tables and a summary") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "rwadic_cfg_test";
    fs::remove_all(dir);

    std::string s = patched("\"checks\": [\"tms\"]", "\"checks\": [\"perron\", \"tms\"]");
    ExperimentConfig cfg = parse_config(s);
    cfg.output_dir = dir.string();
    const int rc = run_experiment(cfg);
    CHECK(rc == 0);
    CHECK(fs::exists(dir / "summary.txt"));
    CHECK(fs::exists(dir / "tms_system.csv"));
    CHECK(fs::exists(dir / "perron_scalars.csv"));

    std::ifstream in(dir / "summary.txt");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("suite=tms pass=1") != std::string::npos);
    CHECK(text.find("suite=perron pass=1") != std::string::npos);
    CHECK(text.find("all_pass=1") != std::string::npos);
    CHECK(text.find(cfg.hash) != std::string::npos);
    // tms precedes perron regardless of the listed order
    CHECK(text.find("suite=tms") < text.find("suite=perron"));

    ExperimentConfig bad = cfg;
    bad.checks.push_back("nope");
    CHECK_THROWS_AS(run_experiment(bad), UnknownSuiteError);
    fs::remove_all(dir);
}

TEST_CASE("aperiodicity gate rejects a rank-deficient observable") {
    // even-valued f: the difference group is 2Z, not all of Z
    ExperimentConfig cfg = parse_config(patched("\"value\": [1]", "\"value\": [2]"));
    cfg.checks = {"clt"};
    cfg.assert_aperiodic = true;
    rehash(cfg);
    CHECK_THROWS_WITH_AS(run_suite("clt", cfg), doctest::Contains("span"),
                         AperiodicityDiagnosticError);

    // same config but with the gate off: the suite is allowed to proceed
    ExperimentConfig ungated = cfg;
    ungated.assert_aperiodic = false;
    rehash(ungated);
    CHECK_NOTHROW(run_suite("tms", ungated));
}
