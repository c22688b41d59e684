#include "doctest.h"

#include <cmath>

#include "fockren/altdress.hpp"

using namespace fockren;

namespace {

ModelSpec ibc_model() {
    // positive fermion dispersion so H0 is invertible
    ModelSpec m = *find_preset("nelson-windowed");
    m.theta = parse_symbol("masspow(2,1)", 1); // p^2 + 1 >= 1
    return m;
}

} // namespace

TEST_CASE("sector words and nilpotency") {
    SectorState a0 = SectorState::inject(3, 0);
    SectorState x = sector_raise(a0);
    REQUIRE(x.terms().size() == 1);
    CHECK(x.terms()[0].power == 1);
    // X^k vanishes on sectors with fewer than k slots left
    SectorState top = SectorState::inject(3, 3);
    CHECK(sector_raise(top).is_zero());
    SectorState deep = a0;
    for (int k = 0; k < 3; ++k) deep = sector_raise(deep);
    CHECK_FALSE(deep.is_zero());
    CHECK(sector_raise(deep).is_zero());
}

TEST_CASE("vacuum-sector inverse is the identity") {
    // on a zero-boson-capacity space the Neumann series is just 1
    SectorState a0 = SectorState::inject(0, 0);
    CHECK(wibc_inverse(a0) == a0);
}

TEST_CASE("one-boson telescoping") {
    // (1 + X)(1 - X) = 1 on n_max = 1
    SectorState a0 = SectorState::inject(1, 0);
    SectorState inv = wibc_inverse(a0);
    REQUIRE(inv.terms().size() == 2); // a0 - X a0
    CHECK(inv.terms()[1].coeff == -1);
    CHECK(wibc_apply(inv) == a0);
}

TEST_CASE("symbolic bijectivity on sectors up to three") {
    for (int n_max : {1, 2, 3}) {
        for (int sector = 0; sector <= n_max; ++sector) {
            SectorState a = SectorState::inject(n_max, sector);
            CHECK(wibc_apply(wibc_inverse(a)) == a);
            CHECK(wibc_inverse(wibc_apply(a)) == a);
        }
    }
}

TEST_CASE("glimm series terminates per sector") {
    // sector N on vacuum input needs exactly N+1 series terms
    auto series = glimm_series(4, 0);
    CHECK(series.size() == 5);
    for (int k = 0; k < 5; ++k) {
        CHECK(series[k].power == k);
        double expected = (k % 2 ? -1.0 : 1.0) / std::tgamma(k + 1.0);
        CHECK(series[k].coeff == doctest::Approx(expected));
    }
}

TEST_CASE("abstract boundary condition decomposition") {
    ModelSpec m = ibc_model();
    IbcDecomposition dec = ibc_decompose(m);
    CHECK(dec.s_factor.find("H0") != std::string::npos);
    CHECK(dec.t_factor.find("- E") != std::string::npos);
    // E is chosen to cancel the divergent scalar exactly
    CHECK(ledger_sum(dec.ledger, m.d).is_zero());
    // windowed model: the scalar is finite here
    CHECK(dec.t_class == Convergence::Convergent);

    // the massless Nelson scalar is the familiar divergent self-energy
    ModelSpec nelson = *find_preset("nelson-massless");
    nelson.theta = parse_symbol("masspow(2,1)", 3);
    IbcDecomposition dn = ibc_decompose(nelson);
    CHECK(dn.t_class == Convergence::UVDivergent);
    CHECK(ledger_sum(dn.ledger, nelson.d).is_zero());

    // theta without a positive floor is rejected
    ModelSpec bad = ibc_model();
    bad.theta = parse_symbol("pow(2)", 1);
    CHECK_THROWS_AS(ibc_decompose(bad), std::invalid_argument);
    bad.theta = Symbol::zero(1);
    CHECK_THROWS_AS(ibc_decompose(bad), std::invalid_argument);
}

TEST_CASE("glimm normalization constant") {
    // massless Nelson: <s,s> with integrand |k|^-3 in d=3 diverges
    // logarithmically at both ends under the borderline convention
    RenIntegral lam = glimm_lambda(*find_preset("nelson-massless"));
    CHECK(classify(lam) == Convergence::BothDivergent);
    CHECK(in_positive_cone(lam));
    // massive Nelson: the infrared end is tamed, ultraviolet divergence stays
    RenIntegral lam_massive = glimm_lambda(*find_preset("nelson-massive"));
    CHECK(classify(lam_massive) == Convergence::UVDivergent);
    // windowed model: everything finite, prefactor is an actual number
    GlimmState g = glimm_T_apply(4, 0, *find_preset("nelson-windowed"));
    CHECK(g.prefactor.as_complex().has_value());
    CHECK(g.tag == StateSpace::Core);
    CHECK(g.series.size() == 5);
}

TEST_CASE("numeric bijectivity of the boundary-condition dressing") {
    ModelSpec m = ibc_model();
    GridSpec grid = GridSpec::gauss(1, 4, 0.25, 4.0, 5, 1, 4);
    OracleReport r = check_ibc_bijectivity(m, grid);
    CHECK(r.pass);
    CHECK(r.deviation < 1e-12);
    // serial reference agrees exactly
    OracleReport rs = check_ibc_bijectivity(m, grid, false);
    CHECK(rs.deviation == r.deviation);
}

TEST_CASE("numeric glimm transform is invertible sector-exactly") {
    ModelSpec m = ibc_model();
    GridSpec grid = GridSpec::gauss(1, 4, 0.25, 4.0, 5, 1, 4);
    OracleReport r = check_glimm_inverse(m, grid);
    CHECK(r.pass);
}

TEST_CASE("zero dispersion floor is rejected numerically") {
    ModelSpec m = *find_preset("nelson-windowed"); // theta = 0
    GridSpec grid = GridSpec::gauss(1, 3, 0.25, 4.0, 3, 1, 3);
    // H0 vanishes on the boson vacuum, so the inverse is undefined
    CHECK_THROWS_AS(check_ibc_bijectivity(m, grid), std::invalid_argument);
}
