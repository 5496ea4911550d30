#include <doctest.h>

#include <numbers>
#include <string>

#include "ctoa/config.hpp"

using namespace ctoa;

TEST_CASE("defaults survive an empty config") {
    const auto cfg = parse_config("");
    CHECK(cfg.mu == 1.0);
    CHECK(cfg.gamma == doctest::Approx(std::numbers::pi / 2));
    CHECK(cfg.potential == "free");
    CHECK(cfg.nystrom_n == 64);
    CHECK(cfg.dt == 0.0);
}

TEST_CASE("key=value parsing with comments and whitespace") {
    const auto cfg = parse_config(
        "# header comment\n"
        "mu = 2.0   # inline comment\n"
        "\n"
        "  potential=harmonic\n"
        "omega = 0.5\n"
        "gamma=0\n"
        "nystrom_n = 48\n"
        "coeffs = 0, 0.5 ,1.25\n"
        "out = results/run1\n");
    CHECK(cfg.mu == 2.0);
    CHECK(cfg.potential == "harmonic");
    CHECK(cfg.omega == 0.5);
    CHECK(cfg.gamma == 0.0);
    CHECK(cfg.physical().periodic());
    CHECK(cfg.nystrom_n == 48);
    REQUIRE(cfg.coeffs.size() == 3);
    CHECK(cfg.coeffs[2] == 1.25);
    CHECK(cfg.out == "results/run1");
}

TEST_CASE("unknown keys and malformed lines are rejected") {
    CHECK_THROWS_AS(parse_config("bogus_key=1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("just a sentence\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("mu=abc\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("nystrom_n=2.5\n"), std::invalid_argument);
}

TEST_CASE("every violation is reported at once") {
    try {
        parse_config("mu=-1\nl=0\nbogus=3\npotential=cubic\n");
        FAIL("expected a throw");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("mu must be positive") != std::string::npos);
        CHECK(msg.find("l must be positive") != std::string::npos);
        CHECK(msg.find("unknown key 'bogus'") != std::string::npos);
        CHECK(msg.find("potential must be") != std::string::npos);
    }
}

TEST_CASE("constraint checks") {
    CHECK_THROWS_AS(parse_config("gamma=3.5\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("goursat_n=8\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("dt=-0.1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("run_mult=0\n"), std::invalid_argument);
    CHECK_NOTHROW(parse_config("gamma=-3.0\n"));
}

TEST_CASE("presets") {
    const auto fig1 = preset("fig1-harmonic");
    CHECK(fig1.potential == "harmonic");
    CHECK(fig1.omega == 1.0);
    CHECK(fig1.gamma == doctest::Approx(std::numbers::pi / 2));
    CHECK(preset("linear-lambda1").potential == "linear");
    CHECK(preset("free-box").potential == "free");
    CHECK_THROWS_AS(preset("nope"), std::invalid_argument);
}

TEST_CASE("serialize round trips") {
    auto cfg = preset("fig1-harmonic");
    cfg.mu = 1.75;
    cfg.coeffs = {0.0, 0.125};
    cfg.out = "elsewhere";
    const auto back = parse_config(serialize(cfg));
    CHECK(back.mu == cfg.mu);
    CHECK(back.gamma == cfg.gamma);
    CHECK(back.potential == cfg.potential);
    CHECK(back.coeffs == cfg.coeffs);
    CHECK(back.out == cfg.out);
}

TEST_CASE("make_potential dispatch") {
    auto cfg = preset("fig1-harmonic");
    CHECK(cfg.make_potential().eval(0.5) == doctest::Approx(0.125));
    cfg.potential = "polynomial";
    cfg.coeffs = {0, 0, 0, 0, 0.25};
    CHECK(cfg.make_potential().eval(1.0) == doctest::Approx(0.25));
}
