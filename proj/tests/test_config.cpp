#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "algdyn/config.hpp"
#include "algdyn/dynamics.hpp"
#include "algdyn/groups.hpp"
#include "algdyn/util.hpp"

using namespace algdyn;

namespace {

std::filesystem::path temp_dir() {
    auto p = std::filesystem::temp_directory_path() / "algdyn_config_test";
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("a full document parses into every field") {
    json doc = json::parse(R"json({
        "group": {"family": "free_abelian", "rank": 2},
        "f": [["(0,0)", 5], ["(1,0)", -1], ["(-1,0)", -1], ["(0,1)", -1], ["(0,-1)", -1]],
        "quotients": [{"moduli": [4, 6]}, {"moduli": [8, 8]}],
        "window": ["(0,0)", "(1,0)"],
        "tail_tol": "1/1000",
        "epsilon": "2/5",
        "delta": "1/10",
        "samples": 5000,
        "bernoulli_n": 250,
        "sampler": "fixed_points",
        "grid": 1024,
        "enumeration_cap": 1000000,
        "fix_enum_cap": 2000,
        "fix_sample_n": 750,
        "seed": 99,
        "threads": 2,
        "out": "reports/run1"
    })json");
    ExperimentConfig cfg = parse_config_json(doc);
    CHECK(cfg.group.family == GroupFamily::FreeAbelian);
    CHECK(cfg.group.rank == 2);
    CHECK(cfg.f.support_size() == 5);
    CHECK(cfg.f.coeff(parse_word(cfg.group, "(0,0)")) == 5);
    CHECK(cfg.f.coeff(parse_word(cfg.group, "(0,-1)")) == -1);
    REQUIRE(cfg.quotients.size() == 2);
    CHECK(cfg.quotients[0].moduli == std::vector<std::int64_t>{4, 6});
    CHECK(cfg.quotients[1].moduli == std::vector<std::int64_t>{8, 8});
    REQUIRE(cfg.window.size() == 2);
    CHECK(cfg.window[1] == parse_word(cfg.group, "(1,0)"));
    CHECK(cfg.tail_tol == mpq_class(1, 1000));
    CHECK(cfg.epsilon == mpq_class(2, 5));
    CHECK(cfg.delta == mpq_class(1, 10));
    CHECK(cfg.samples == 5000);
    CHECK(cfg.bernoulli_n == 250);
    CHECK(cfg.sampler == SamplerSpec::Kind::FixedPoints);
    CHECK(cfg.grid == 1024);
    CHECK(cfg.enum_opt.enumeration_cap == 1000000);
    CHECK(cfg.enum_opt.fix_enum_cap == 2000);
    CHECK(cfg.enum_opt.fix_sample_n == 750);
    CHECK(cfg.seed == 99);
    CHECK(cfg.seed_given);
    CHECK(cfg.threads == 2);
    CHECK(cfg.out == "reports/run1");
}

TEST_CASE("defaults hold when optional fields are absent") {
    json doc = json::parse(R"json({
        "group": {"family": "free_abelian", "rank": 1},
        "f": [["e", 3], ["(1)", -1]]
    })json");
    ExperimentConfig cfg = parse_config_json(doc);
    CHECK(cfg.quotients.empty());
    CHECK(cfg.window.empty());
    CHECK(cfg.tail_tol == mpq_class(1, 1000000));
    CHECK(cfg.epsilon == mpq_class(2, 5));
    CHECK(cfg.samples == 10000);
    CHECK(cfg.sampler == SamplerSpec::Kind::Bernoulli);
    CHECK(!cfg.seed_given);
    CHECK(cfg.threads == 0);
    CHECK(cfg.out.empty());
}

TEST_CASE("free-group and nilpotent quotient parameters parse") {
    json doc = json::parse(R"json({
        "group": {"family": "free", "rank": 2},
        "f": [["e", 5], ["a", -1], ["a^-1", -1], ["b", -1], ["b^-1", -1]],
        "quotients": [{"degree": 3, "generator_images": [[1, 2, 0], [1, 0, 2]]}]
    })json");
    ExperimentConfig cfg = parse_config_json(doc);
    CHECK(cfg.group.family == GroupFamily::Free);
    REQUIRE(cfg.quotients.size() == 1);
    CHECK(cfg.quotients[0].degree == 3);
    CHECK(cfg.quotients[0].generator_images ==
          std::vector<std::vector<int>>{{1, 2, 0}, {1, 0, 2}});

    json hdoc = json::parse(R"json({
        "group": {"family": "heisenberg"},
        "f": [["(0,0,0)", 5], ["(1,0,0)", -1], ["(-1,0,0)", -1], ["(0,1,0)", -1], ["(0,-1,0)", -1]],
        "quotients": [{"modulus": 3}]
    })json");
    ExperimentConfig hcfg = parse_config_json(hdoc);
    CHECK(hcfg.group.family == GroupFamily::Heisenberg);
    REQUIRE(hcfg.quotients.size() == 1);
    CHECK(hcfg.quotients[0].modulus == 3);
}

TEST_CASE("diagnostics name the offending field") {
    auto parse = [](const char* text) { return parse_config_json(json::parse(text)); };

    CHECK_THROWS_WITH_AS(parse(R"json({"f": [["e", 1]]})json"), doctest::Contains("'group'"), Error);
    CHECK_THROWS_WITH_AS(parse(R"json({"group": {"family": "dihedral"}, "f": [["e", 1]]})json"),
                         doctest::Contains("group.family"), Error);
    CHECK_THROWS_WITH_AS(parse(R"json({"group": {"family": "free_abelian", "rank": 0}, "f": [["e", 1]]})json"),
                         doctest::Contains("group.rank"), Error);
    CHECK_THROWS_WITH_AS(parse(R"json({"group": {"family": "free_abelian", "rank": 1}, "f": []})json"),
                         doctest::Contains("'f'"), Error);
    CHECK_THROWS_WITH_AS(
        parse(R"json({"group": {"family": "free_abelian", "rank": 1}, "f": [["e", 1], ["e", -1]]})json"),
        doctest::Contains("cancelled"), Error);
    CHECK_THROWS_WITH_AS(
        parse(R"json({"group": {"family": "free_abelian", "rank": 1}, "f": [["e"]]})json"),
        doctest::Contains("f[0]"), Error);
    CHECK_THROWS_WITH_AS(
        parse(R"json({"group": {"family": "free_abelian", "rank": 2},
                  "f": [["(0,0)", 1]], "quotients": [{"moduli": [4]}]})json"),
        doctest::Contains("moduli"), Error);
    CHECK_THROWS_WITH_AS(
        parse(R"json({"group": {"family": "free_abelian", "rank": 1}, "f": [["e", 1]],
                  "window": [17]})json"),
        doctest::Contains("window[0]"), Error);
    CHECK_THROWS_WITH_AS(
        parse(R"json({"group": {"family": "free_abelian", "rank": 1}, "f": [["e", 1]],
                  "epsilon": 0})json"),
        doctest::Contains("epsilon"), Error);
    CHECK_THROWS_WITH_AS(
        parse(R"json({"group": {"family": "free_abelian", "rank": 1}, "f": [["e", 1]],
                  "sampler": "gibbs"})json"),
        doctest::Contains("sampler"), Error);
    CHECK_THROWS_WITH_AS(
        parse(R"json({"group": {"family": "free_abelian", "rank": 1}, "f": [["e", 1]],
                  "threads": 2000})json"),
        doctest::Contains("threads"), Error);
    CHECK_THROWS_WITH_AS(parse(R"json([1, 2, 3])json"), doctest::Contains("object"), Error);

    // All of these are configuration errors as far as exit codes go.
    try {
        parse(R"json({"f": [["e", 1]]})json");
        FAIL("expected a parse failure");
    } catch (const Error& e) {
        CHECK(e.code() == "config_invalid");
    }
}

TEST_CASE("rationals arrive as integers or quoted fractions") {
    json doc = json::parse(R"json({
        "group": {"family": "free_abelian", "rank": 1},
        "f": [["e", 3], ["(1)", "-1/2"]],
        "epsilon": 1
    })json");
    ExperimentConfig cfg = parse_config_json(doc);
    CHECK(cfg.f.coeff(parse_word(cfg.group, "(1)")) == mpq_class(-1, 2));
    CHECK(cfg.epsilon == 1);
    CHECK_THROWS_WITH_AS(
        parse_config_json(json::parse(
            R"json({"group": {"family": "free_abelian", "rank": 1}, "f": [["e", 0.5]]})json")),
        doctest::Contains("coeff"), Error);
}

TEST_CASE("report formatting is stable and json safe") {
    CHECK(decimal(mpz_class(-123)) == "-123");
    CHECK(decimal(mpz_class(0)) == "0");
    CHECK(rational(mpq_class(3, 4)) == "3/4");
    CHECK(rational(mpq_class(5)) == "5");
    CHECK(rational(mpq_class(-7, 2)) == "-7/2");
    CHECK(json_double(1.5) == json(1.5));
    CHECK(json_double(std::numeric_limits<double>::infinity()) == json("inf"));
    CHECK(json_double(-std::numeric_limits<double>::infinity()) == json("-inf"));
    CHECK(json_double(std::nan("")) == json("nan"));
}

TEST_CASE("structured values serialize and read back") {
    auto z1 = GroupSpec::free_abelian(1);
    RingElement f(z1);
    f.add_term(parse_word(z1, "e"), 3);
    f.add_term(parse_word(z1, "(1)"), mpq_class(-1, 2));
    json jf = ring_element_json(f);
    REQUIRE(jf.is_array());
    REQUIRE(jf.size() == 2);
    RingElement back(z1);
    for (const auto& term : jf)
        back.add_term(parse_word(z1, term[0].get<std::string>()),
                      parse_rational(term[1].get<std::string>()));
    CHECK(back.coeffs() == f.coeffs());

    QuotientParams qp;
    qp.moduli = {3, 5};
    json jq = quotient_params_json(qp);
    CHECK(jq["moduli"] == json::array({3, 5}));

    QuotientParams fp;
    fp.degree = 3;
    fp.generator_images = {{1, 2, 0}, {1, 0, 2}};
    json jp = quotient_params_json(fp);
    CHECK(jp["degree"] == 3);
    CHECK(jp["generator_images"].size() == 2);

    WindowDistribution d;
    d.window = {parse_word(z1, "e")};
    d.alphabet_M = 1;
    d.probs[{1}] = mpq_class(1, 3);
    d.probs[{0}] = mpq_class(2, 3);
    json jd = window_distribution_json(d);
    CHECK(jd["alphabet_M"] == 1);
    CHECK(jd["aliased"] == false);
    CHECK(jd["window"] == json::array({"e"}));
    REQUIRE(jd["masses"].size() == 2);
    mpq_class total = 0;
    for (const auto& mass : jd["masses"]) total += parse_rational(mass[1].get<std::string>());
    CHECK(total == 1);
}

TEST_CASE("reports land on disk with meta and results separated") {
    auto dir = temp_dir();
    auto path = (dir / "report.json").string();
    json meta = make_meta("fixcount", 42, 3);
    CHECK(meta["command"] == "fixcount");
    CHECK(meta["seed"] == 42);
    CHECK(meta["threads"] == 3);
    CHECK(meta.contains("timestamp_ms"));

    json results;
    results["count"] = "1023";
    write_report(path, meta, results);

    std::ifstream in(path);
    REQUIRE(in.good());
    json doc = json::parse(in);
    CHECK(doc["meta"]["command"] == "fixcount");
    CHECK(doc["results"]["count"] == "1023");

    auto csv = (dir / "series.csv").string();
    write_csv(csv, {"n", "count"}, {{"1", "1"}, {"2", "3"}});
    std::ifstream cin_(csv);
    std::stringstream ss;
    ss << cin_.rdbuf();
    CHECK(ss.str() == "n,count\n1,1\n2,3\n");

    std::filesystem::remove_all(dir);
}

TEST_CASE("a missing config file is a configuration error") {
    CHECK_THROWS_WITH_AS(parse_config("/nonexistent/path/config.json"),
                         doctest::Contains("config_invalid"), Error);
}
