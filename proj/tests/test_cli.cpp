#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "strata/campaigns.hpp"

#include <cstdio>
#include <fstream>

using namespace strata;

TEST_CASE("identical config and seed give byte-identical reports") {
    RunConfig cfg;
    cfg.subcommand = "closure";
    cfg.a = 1;
    cfg.b = 2;
    cfg.p = 3;
    cfg.N = 6;
    cfg.seed = 99;
    cfg.sweep = 200;
    RunResult r1 = run_campaign(cfg);
    RunResult r2 = run_campaign(cfg);
    CHECK(r1.exit_code == kExitPass);
    CHECK(r1.rendered == r2.rendered);

    cfg.subcommand = "hasse";
    cfg.n = 1;
    cfg.q_list = {4};
    cfg.target = 100;
    RunResult h1 = run_campaign(cfg);
    RunResult h2 = run_campaign(cfg);
    CHECK(h1.exit_code == kExitPass);
    CHECK(h1.rendered == h2.rendered);
}

TEST_CASE("reports embed version, config echo and seed") {
    RunConfig cfg;
    cfg.subcommand = "count";
    cfg.a = 1;
    cfg.b = 1;
    cfg.q_list = {3, 5};
    cfg.seed = 12345;
    RunResult r = run_campaign(cfg);
    CHECK(r.report.at("tool_version") == kToolVersion);
    CHECK(r.report.at("config").at("seed") == 12345);
    CHECK(r.report.at("config").at("subcommand") == "count");
    for (const auto& c : r.report.at("claims")) CHECK(c.contains("id"));
}

TEST_CASE("exit codes distinguish usage, property failure and budget") {
    RunConfig cfg;
    cfg.subcommand = "nonsense";
    CHECK(run_campaign(cfg).exit_code == kExitUsage);

    // Too few samples to confirm a degree-4 count polynomial: the degree
    // claim fails and the run exits with a property failure.
    cfg = RunConfig{};
    cfg.subcommand = "count";
    cfg.a = 2;
    cfg.b = 2;
    cfg.q_list = {3, 5, 7};
    RunResult r = run_campaign(cfg);
    CHECK(r.exit_code == kExitPropertyFailure);
    CHECK(r.report.at("status") == "fail");

    cfg.q_list = {3, 5, 7, 9, 11, 13};
    cfg.budget = 10;
    CHECK(run_campaign(cfg).exit_code == kExitBudget);

    cfg.budget = 2'000'000;
    RunResult ok = run_campaign(cfg);
    CHECK(ok.exit_code == kExitPass);
}

TEST_CASE("config files apply key=value settings") {
    std::string path = "test_cli_config.tmp";
    {
        std::ofstream out(path);
        out << "# comment line\n";
        out << "a = 1\n";
        out << "b = 2\n";
        out << "q = 3,5\n";
        out << "seed = 777\n";
        out << "format = text\n";
    }
    RunConfig cfg;
    cfg.subcommand = "count";
    apply_config_file(cfg, path);
    std::remove(path.c_str());
    CHECK(cfg.a == 1);
    CHECK(cfg.b == 2);
    CHECK(cfg.q_list == std::vector<int>({3, 5}));
    CHECK(cfg.seed == 777);
    CHECK(cfg.format == "text");
    RunResult r = run_campaign(cfg);
    CHECK(r.exit_code == kExitPass);
    CHECK(r.rendered.find("overall: pass") != std::string::npos);

    CHECK_THROWS_AS(apply_config_file(cfg, "does_not_exist.tmp"), std::invalid_argument);
}

TEST_CASE("csv and text renderings are non-empty and shaped") {
    RunConfig cfg;
    cfg.subcommand = "count";
    cfg.a = 1;
    cfg.b = 1;
    cfg.q_list = {3};
    cfg.format = "csv";
    RunResult r = run_campaign(cfg);
    CHECK(r.rendered.rfind("claim,status", 0) == 0);
    CHECK(r.rendered.find("a,b,p,f,case,h,l,count") != std::string::npos);
    CHECK(r.rendered.find("odd-char") != std::string::npos);

    cfg.format = "text";
    RunResult t = run_campaign(cfg);
    CHECK(t.rendered.find("stratum-bounds") != std::string::npos);
}

TEST_CASE("weights campaign emits machine-readable rows") {
    RunConfig cfg;
    cfg.subcommand = "weights";
    cfg.a = 1;
    cfg.b = 2;
    cfg.range = 1;
    RunResult r = run_campaign(cfg);
    CHECK(r.exit_code == kExitPass);
    const json& rows = r.report.at("data").at("rows");
    CHECK(!rows.empty());
    for (const auto& row : rows) {
        CHECK(row.contains("k"));
        CHECK(row.contains("l"));
        CHECK(row.contains("criterion"));
        CHECK(row.contains("oracle"));
    }
}

TEST_CASE("closure reachability table matches the closure order exactly") {
    RunConfig cfg;
    cfg.subcommand = "closure";
    cfg.a = 2;
    cfg.b = 2;
    cfg.p = 3;
    cfg.N = 6;
    cfg.sweep = 50;
    RunResult r = run_campaign(cfg);
    REQUIRE(r.exit_code == kExitPass);
    const json& table = r.report.at("data").at("reachability");
    int entries = 0, reachable = 0;
    for (auto& [key, val] : table.items()) {
        ++entries;
        if (val != "incomparable") {
            CHECK(val != "exhausted");
            ++reachable;
        }
    }
    CHECK(entries == 36);   // 6 x 6 label pairs
    CHECK(reachable == 15); // comparable pairs carry witnesses
}

TEST_CASE("closure witness revalidation replays an emitted report") {
    RunConfig cfg;
    cfg.subcommand = "closure";
    cfg.a = 1;
    cfg.b = 2;
    cfg.p = 3;
    cfg.N = 6;
    cfg.sweep = 20;
    RunResult r = run_campaign(cfg);
    REQUIRE(r.exit_code == kExitPass);
    std::string path = "test_cli_closure_report.tmp";
    {
        std::ofstream out(path);
        out << r.report.dump(2);
    }
    RunConfig rv = cfg;
    rv.revalidate = path;
    RunResult rr = run_campaign(rv);
    std::remove(path.c_str());
    CHECK(rr.exit_code == kExitPass);
    CHECK(rr.report.at("data").at("revalidated").get<long long>() > 0);
}
