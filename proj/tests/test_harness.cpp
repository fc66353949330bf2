#include "doctest.h"

#include <cmath>
#include <numbers>

#include "qfp/harness.hpp"
#include "qfp/ideal.hpp"

using namespace qfp;

namespace {

std::string header_value(const ExperimentReport& r, const std::string& key) {
    for (const auto& [k, v] : r.header) {
        if (k == key) return v;
    }
    return "<missing>";
}

}  // namespace

TEST_CASE("csv quoting") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");

    ExperimentReport r;
    r.command = "demo";
    r.echo("x", 1e6);
    r.columns = {"k", "v"};
    r.add_row({"[7, 6+w]", "0.5"});
    CHECK(r.csv() == "# command=demo\n# x=1000000\nk,v\n\"[7, 6+w]\",0.5\n");
    CHECK_THROWS_AS(r.add_row({"only one"}), std::logic_error);
    r.check(false, "broken");
    CHECK(!r.passed());
}

TEST_CASE("trial streams") {
    TrialRng a(1, 0), b(1, 0), c(1, 1), d(2, 0);
    const u64 va = a.next();
    CHECK(va == b.next());
    CHECK(va != c.next());
    CHECK(va != d.next());
    TrialRng u(7, 3);
    for (int i = 0; i < 1000; ++i) {
        const double x = u.uniform();
        REQUIRE(x >= 0);
        REQUIRE(x < 1);
    }
}

TEST_CASE("density scan") {
    ExperimentConfig cfg;
    cfg.d = -1;
    cfg.x = 1e5;
    cfg.trials = 0;
    const auto empty = cmd_density_scan(cfg);
    CHECK(empty.rows.empty());
    CHECK(empty.passed());

    // a window of almost the full circle sees every prime ideal of [x/2, x]
    for (i64 d : {-1, 2}) {
        cfg.d = d;
        cfg.trials = 1;
        cfg.y = cfg.x / 2;
        cfg.phi = 2 * std::numbers::pi - 1e-9;
        const auto K = make_field(d);
        long long want = 0;
        for (u64 p : primes_up_to(static_cast<u64>(cfg.x))) {
            const int k = kronecker_prime(K.disc, p);
            const u64 n = k == -1 ? p * p : p;
            if (n < cfg.x / 2 || n > cfg.x) continue;
            want += k == 1 ? 2 : 1;
        }
        const auto r = cmd_density_scan(cfg);
        REQUIRE(r.rows.size() == 1);
        CHECK(std::stoll(r.rows[0][2]) == want);
        CHECK(r.summary["in_window"] == want);
    }
}

TEST_CASE("config echo") {
    ExperimentConfig cfg;
    cfg.x = 1e6;
    const auto r = cmd_smoothing_check(cfg);
    for (const char* key : {"x", "y", "phi", "eta", "delta1", "delta2", "r", "M", "T0", "T1", "has_plateau"}) {
        CHECK(header_value(r, key) != "<missing>");
    }
    CHECK(header_value(r, "M") == "40");
    CHECK(header_value(r, "r") == "41");
    CHECK(r.passed());  // the truncation bound is recorded, not asserted
    cfg.assert_truncation = true;
    CHECK(!cmd_smoothing_check(cfg).passed());
}

TEST_CASE("search commands") {
    ExperimentConfig cfg;
    cfg.form = {1, 0, -2};
    cfg.target = {3, 1};
    const auto r = cmd_search_audit(cfg);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0][4] == "7");
    CHECK(r.rows[0][5] == "0");
    CHECK(r.passed());

    cfg.target = {};
    cfg.form = {1, 0, 1};
    cfg.trials = 5;
    cfg.rmax = 1e3;
    const auto a = cmd_search_audit(cfg);
    CHECK(a.rows.size() == 5);
    CHECK(a.passed());

    cfg.target = {1.5};
    CHECK_THROWS(cmd_prime_near(cfg));
}

TEST_CASE("dirichlet sweep and ratio check") {
    ExperimentConfig cfg;
    cfg.M = 0;
    const auto r = cmd_dirichlet_sweep(cfg);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0][14] == "0");  // E
    CHECK(r.passed());

    ExperimentConfig z;
    z.model = "zero";
    z.xs = {1e4};
    const auto q = cmd_ratio_check(z);
    REQUIRE(q.rows.size() == 1);
    CHECK(q.rows[0].back() == "0");
}

TEST_CASE("field commands and dispatch") {
    ExperimentConfig cfg;
    cfg.ds = {-1, -5, 2, 10};
    const auto f = cmd_class_number(cfg);
    REQUIRE(f.rows.size() == 4);
    CHECK(f.rows[1][2] == "2");
    CHECK(f.rows[3][2] == "unsupported");
    cfg.ds = {2, 5};
    const auto u = cmd_fundamental_unit(cfg);
    CHECK(u.rows[0][1] == "2");  // (u + v sqrt 8)/2
    CHECK(u.rows[0][2] == "1");
    CHECK(u.passed());
    CHECK(command_names().size() == 11);
    CHECK_THROWS_AS(run_command("nope", cfg), std::invalid_argument);

    ExperimentConfig c;
    c.d = -3;
    c.limit = 200;
    const auto e = cmd_char_eval(c);
    CHECK(e.passed());
    CHECK(!e.rows.empty());
}
