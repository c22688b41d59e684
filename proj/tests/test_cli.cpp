#include "doctest.h"

#include "fockren/config.hpp"
#include "fockren/reports.hpp"

using namespace fockren;

TEST_CASE("config parsing") {
    auto cfg = parse_config("# comment\nname = demo\nd = 3\nv = pow(-1/2)  # inline\n"
                            "[oracle]\noracle.nmax = 6\n");
    CHECK(cfg.at("name") == "demo");
    CHECK(cfg.at("v") == "pow(-1/2)");
    CHECK(cfg.at("oracle.nmax") == "6");
    CHECK_THROWS_AS(parse_config("not a key value line"), std::invalid_argument);

    ModelSpec m = model_from_config(parse_config("name = demo\nd = 3\nomega = pow(1)\n"
                                                 "v = pow(-1/2)\ntheta1 = 0.5*pow(2)\n"));
    CHECK(m.v == parse_symbol("pow(-1/2)", 3));
    CHECK(m.theta.is_zero());

    OracleConfig o = oracle_from_config(parse_config("oracle.nmax = 7\noracle.serial = true\n"));
    CHECK(o.n_max == 7);
    CHECK(o.serial);
    CHECK(o.modes == 8); // default
}

TEST_CASE("preset names resolve") {
    ModelSpec m = resolve_model("froehlich");
    CHECK(m.omega == parse_symbol("1", 3));
    REQUIRE(m.published_theta_degrees.has_value());
    CHECK(m.published_theta_degrees->second == Rational(0));
    CHECK_THROWS_AS(resolve_model("no-such-model.toml"), std::invalid_argument);
}

TEST_CASE("reports are deterministic") {
    ModelSpec model = *find_preset("nelson-massless");
    std::string a = verdict_report(model, classify_model(model));
    std::string b = verdict_report(model, classify_model(model));
    CHECK(a == b);
    PulledHamiltonian h1 = pullback_full(model);
    PulledHamiltonian h2 = pullback_full(model);
    CHECK(pullback_report(model, h1) == pullback_report(model, h2));
    auto rows = model_table({model});
    CHECK(table_csv(rows) == table_csv(model_table({model})));
}

TEST_CASE("serialization round trips") {
    // formal integral: text form parses back to the same canonical integrand
    RenIntegral r = RenIntegral::of(parse_symbol("pow(-2) + window(1,2)*pow(-4)", 3));
    std::string j = renint_json(r);
    CHECK(j.find("pow(-2)") != std::string::npos);

    // decomposition record round trip
    ModelSpec model = *find_preset("nelson-windowed");
    model.theta = parse_symbol("masspow(2,1)", 1);
    IbcDecomposition dec = ibc_decompose(model);
    std::string text = ibc_report(model, dec, nullptr);
    IbcDecomposition back = ibc_from_json(text);
    CHECK(back.s_factor == dec.s_factor);
    CHECK(back.t_factor == dec.t_factor);
    CHECK(back.t_class == dec.t_class);
    CHECK(ren_equal(back.t_scalar, dec.t_scalar, 1e-12) != EqVerdict::NotEqual);
    REQUIRE(back.ledger.size() == dec.ledger.size());
    CHECK(ledger_sum(back.ledger, model.d).is_zero());
}

TEST_CASE("eren serialization shape") {
    RenScalar c = RenScalar::exp_ren(RenIntegral::of(parse_symbol("pow(-2)", 3)));
    std::string j = renscalar_json(c);
    CHECK(j.find("\"num\"") != std::string::npos);
    CHECK(j.find("\"den\"") != std::string::npos);
    CHECK(j.find("\"exponent\"") != std::string::npos);
}
