// Report layer: deterministic rendering, config parsing, the closed-form
// verification harness, and the estimator cross-check. JSON output is
// validated with an independent parser.

#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hbloch/hbloch.hpp"

using namespace hbloch;
using Catch::Approx;

TEST_CASE("format_real: shortest round-trip rendering", "[report]") {
    REQUIRE(format_real(1.0) == "1");
    REQUIRE(format_real(0.5) == "0.5");
    REQUIRE(format_real(0.0) == "0");
    REQUIRE(format_real(-0.25) == "-0.25");
    REQUIRE(format_real(0.1) == "0.10000000000000001");

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 50; ++i) {
        const double x = u(rng);
        REQUIRE(std::stod(format_real(x)) == x);  // %.17g is lossless
    }
}

TEST_CASE("csv fields are quoted only when needed", "[report]") {
    REQUIRE(detail::csv_field("identity") == "identity");
    REQUIRE(detail::csv_field("poly coeffs=[0, 0.5]") == "\"poly coeffs=[0, 0.5]\"");
    REQUIRE(detail::csv_field("a\"b") == "\"a\"\"b\"");
    REQUIRE(detail::csv_field("line\nbreak") == "\"line\nbreak\"");
}

TEST_CASE("strict scalar parsers reject trailing junk", "[report]") {
    REQUIRE(detail::parse_real_strict("1.5e-3", "t") == Approx(1.5e-3));
    REQUIRE_THROWS_AS(detail::parse_real_strict("1.5x", "t"), config_parse_error);
    REQUIRE_THROWS_AS(detail::parse_real_strict("", "t"), config_parse_error);
    REQUIRE(detail::parse_integer_strict("-42", "t") == -42);
    REQUIRE_THROWS_AS(detail::parse_integer_strict("42.5", "t"), config_parse_error);
    REQUIRE(detail::parse_bool_strict("true", "t"));
    REQUIRE(detail::parse_bool_strict("1", "t"));
    REQUIRE_FALSE(detail::parse_bool_strict("false", "t"));
    REQUIRE_THROWS_AS(detail::parse_bool_strict("yes", "t"), config_parse_error);
    REQUIRE(detail::split_list("a, b ,c") == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("experiment config parsing", "[report]") {
    SECTION("a full file round-trips every key") {
        std::istringstream in(
            "# estimator comparison\n"
            "symbol = identity\n"
            "symbol = dilation s=0.9   # trailing comment\n"
            "alphas = 0.5, 1, 2\n"
            "estimators = E1, E3\n"
            "ladder_N = 512\n"
            "radial_levels = 12\n"
            "angular_base = 32\n"
            "angular_growth = 1.2\n"
            "refinement_rounds = 1\n"
            "seed = 7\n"
            "angular_jitter = false\n"
            "output = out.csv\n"
            "format = json\n");
        const ExperimentConfig cfg = parse_config(in);
        REQUIRE(cfg.symbols == std::vector<std::string>{"identity", "dilation s=0.9"});
        REQUIRE(cfg.alphas == std::vector<double>{0.5, 1.0, 2.0});
        REQUIRE(cfg.estimators == std::vector<std::string>{"E1", "E3"});
        REQUIRE(cfg.ladder_N == 512);
        REQUIRE(cfg.scheme.radial_levels == 12);
        REQUIRE(cfg.scheme.angular_base == 32);
        REQUIRE(cfg.scheme.angular_growth == 1.2);
        REQUIRE(cfg.scheme.refinement_rounds == 1);
        REQUIRE(cfg.scheme.seed == 7);
        REQUIRE_FALSE(cfg.scheme.angular_jitter);
        REQUIRE(cfg.output_path == "out.csv");
        REQUIRE(cfg.format == "json");
    }

    SECTION("parse and validation errors") {
        const auto parse = [](const std::string& text) {
            std::istringstream in(text);
            return parse_config(in);
        };
        REQUIRE_THROWS_AS(parse("symbol = identity\nalphas = 1\nbogus_key = 3\n"),
                          config_parse_error);
        REQUIRE_THROWS_AS(parse("symbol identity\n"), config_parse_error);
        REQUIRE_THROWS_AS(parse("symbol = identity\nalphas = 1x\n"), config_parse_error);
        REQUIRE_THROWS_AS(parse("alphas = 1\n"), config_parse_error);           // no symbol
        REQUIRE_THROWS_AS(parse("symbol = identity\n"), config_parse_error);    // no alphas
        REQUIRE_THROWS_AS(parse("symbol = identity\nalphas = 1\nestimators = E9\n"),
                          config_parse_error);
        REQUIRE_THROWS_AS(parse("symbol = identity\nalphas = 1\nformat = yaml\n"),
                          config_parse_error);
    }
}

TEST_CASE("harmonic function specs", "[report]") {
    const cplx z(0.4, -0.3);

    SECTION("monomial pair shorthand") {
        const HarmonicFunction f = parse_harmonic_spec("znbar n=3");
        REQUIRE(std::abs(f.eval(z) - znbar_harmonic(3).eval(z)) < 1e-15);
    }

    SECTION("explicit analytic and co-analytic parts") {
        const HarmonicFunction a = parse_harmonic_spec("h=poly coeffs=[0,1]");
        REQUIRE(std::abs(a.eval(z) - z) < 1e-15);
        const HarmonicFunction b = parse_harmonic_spec("g=poly coeffs=[0,1]");
        REQUIRE(std::abs(b.eval(z) - std::conj(z)) < 1e-15);
        const HarmonicFunction c = parse_harmonic_spec("h=poly coeffs=[0,1]; g=poly coeffs=[0,0,0.5]");
        REQUIRE(std::abs(c.eval(z) - (z + std::conj(0.5 * z * z))) < 1e-15);
    }

    SECTION("spec errors") {
        REQUIRE_THROWS_AS(parse_harmonic_spec("znbar n=0"), config_parse_error);
        REQUIRE_THROWS_AS(parse_harmonic_spec("znbar m=2"), config_parse_error);
        REQUIRE_THROWS_AS(parse_harmonic_spec("bogus"), config_parse_error);
        REQUIRE_THROWS_AS(parse_harmonic_spec(""), config_parse_error);
    }
}

TEST_CASE("report rows order and render deterministically", "[report]") {
    std::vector<ReportRow> rows{
        {"b", 1.0, "E1", -1.0, 0.5, "summary"},
        {"a", 2.0, "E1", -1.0, 0.25, "summary"},
        {"a", 1.0, "E2", 0.5, 1.0, "trace"},
        {"a", 1.0, "E1", 0.5, 1.0, "trace"},
    };
    std::sort(rows.begin(), rows.end(), report_row_less);
    REQUIRE(rows[0].symbol_id == "a");
    REQUIRE(rows[0].estimator == "E1");
    REQUIRE(rows[1].estimator == "E2");
    REQUIRE(rows[2].alpha == 2.0);
    REQUIRE(rows[3].symbol_id == "b");

    const std::string csv = render_csv(rows);
    REQUIRE(csv.rfind("symbol_id,alpha,estimator,index,value,flags\n", 0) == 0);
    REQUIRE(csv.find("a,1,E1,0.5,1,trace\n") != std::string::npos);
}

TEST_CASE("experiments are byte-deterministic", "[report]") {
    std::istringstream in(
        "symbol = identity\n"
        "symbol = dilation s=0.5\n"
        "alphas = 1\n"
        "estimators = E1, E3\n"
        "ladder_N = 32\n"
        "radial_levels = 8\n"
        "angular_base = 8\n"
        "refinement_rounds = 1\n");
    const ExperimentConfig cfg = parse_config(in);

    const ExperimentDocument first = run_experiment(cfg);
    const ExperimentDocument second = run_experiment(cfg);
    REQUIRE(first.text == second.text);
    REQUIRE(first.rows.size() == second.rows.size());
    REQUIRE(std::is_sorted(first.rows.begin(), first.rows.end(), report_row_less));
    REQUIRE(first.text.rfind("symbol_id,alpha,estimator,index,value,flags\n", 0) == 0);

    // Summary rows exist for both estimators and both symbols.
    int summaries = 0;
    for (const ReportRow& r : first.rows)
        if (r.index == -1.0) ++summaries;
    REQUIRE(summaries >= 4);
}

TEST_CASE("json reports parse with an independent reader", "[report]") {
    std::istringstream in(
        "symbol = dilation s=0.5\n"
        "alphas = 1\n"
        "estimators = E1\n"
        "radial_levels = 6\n"
        "angular_base = 8\n"
        "format = json\n");
    const ExperimentConfig cfg = parse_config(in);
    const ExperimentDocument doc = run_experiment(cfg);

    const nlohmann::json j = nlohmann::json::parse(doc.text);
    REQUIRE(j.at("generator") == "hbloch");
    REQUIRE(j.at("version") == version_string);
    REQUIRE(j.at("config").at("symbols").size() == 1);
    REQUIRE(j.at("config").at("scheme").at("radial_levels") == 6);
    REQUIRE(j.at("rows").is_array());
    REQUIRE(!j.at("rows").empty());
    bool found_summary = false;
    for (const auto& row : j.at("rows")) {
        REQUIRE(row.at("symbol_id") == "dilation s=0.5");
        if (row.at("index") == -1.0) {
            found_summary = true;
            // |phi| < 0.5, so the deep superlevel sets are empty.
            REQUIRE(row.at("value") == 0.0);
        }
    }
    REQUIRE(found_summary);
}

TEST_CASE("file output round-trips and bad paths fail loudly", "[report]") {
    const std::string path = "hbloch_test_report.tmp";
    write_text_file(path, "payload\n");
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    REQUIRE(buf.str() == "payload\n");
    std::remove(path.c_str());
    REQUIRE_THROWS_AS(write_text_file("/nonexistent-dir-zz/x.csv", "x"), io_error);
}

TEST_CASE("closed-form profile verification at small n", "[report]") {
    const LemmaCheck check = verify_lemma1(20, {0.5, 1.0});
    REQUIRE(check.pass);
    REQUIRE(check.rows.size() == 40);
    REQUIRE(check.monotone_all);
    REQUIRE(check.max_radius_error <= 1e-9);
    REQUIRE(check.max_peak_error <= 1e-9);
    REQUIRE(check.max_band_error <= 1e-9);

    // The degenerate first profile peaks at the origin with value 1.
    for (const LemmaCheckRow& row : check.rows) {
        if (row.n == 1) {
            REQUIRE(row.radius_closed == 0.0);
            REQUIRE(row.peak_closed == 1.0);
            REQUIRE(row.radius_oracle == Approx(0.0).margin(1e-9));
            REQUIRE(row.peak_oracle == Approx(1.0).epsilon(1e-12));
        }
    }
    REQUIRE(check.band_limits.size() == 2);
    for (const BandLimitRow& bl : check.band_limits) REQUIRE(bl.rel_error <= 1e-2);

    REQUIRE_THROWS_AS(verify_lemma1(1, {1.0}), parameter_domain_error);
    REQUIRE_THROWS_AS(verify_lemma1(5, {}), parameter_domain_error);
}

TEST_CASE("estimator cross-check on a single case", "[report]") {
    const CrossCheckResult res =
        cross_check({{"identity", 1.0}}, 64, SamplingScheme::coarse());
    REQUIRE(res.all_pass);
    REQUIRE(res.rows.size() == 1);
    const CrossCheckRow& row = res.rows[0];
    REQUIRE(row.E1 == Approx(1.0).margin(1e-6));
    REQUIRE(row.E2 == Approx(1.0).margin(1e-6));
    REQUIRE(row.E3 == Approx(1.0).epsilon(0.05));
    REQUIRE(row.pass);

    const std::string csv = render_cross_check_csv(res);
    REQUIRE(csv.rfind("symbol_id,alpha,E1,E2,E3,gap_E1_E2,gap_E1_E3,pass\n", 0) == 0);
    REQUIRE(csv.find("identity,1,") != std::string::npos);
    REQUIRE(csv.find(",true\n") != std::string::npos);

    REQUIRE_THROWS_AS(cross_check({}), parameter_domain_error);
}

TEST_CASE("default suite covers the reference symbols", "[report]") {
    const std::vector<CrossCheckCase> suite = default_suite();
    REQUIRE(suite.size() == 7);
    int dilations = 0;
    for (const CrossCheckCase& c : suite) {
        REQUIRE_NOTHROW(make_symbol(c.symbol_spec));
        REQUIRE(c.alpha > 0.0);
        if (c.symbol_spec.rfind("dilation", 0) == 0) ++dilations;
    }
    REQUIRE(dilations == 4);
}
