#include <catch2/catch_amalgamated.hpp>

#include "chm/filtration.hpp"

using namespace chm;

TEST_CASE("filtration statistic counts deep gammas against betas") {
    Monomial m{{Kind::Beta, 1, -1}, {Kind::Gamma, 1, -2}, {Kind::Gamma, 2, -1}};
    REQUIRE(monomial_filtration(m) == 0);  // one deep gamma, one beta
    REQUIRE(monomial_filtration({{Kind::Gamma, 1, -3}, {Kind::Gamma, 1, -2}}) == 2);
    REQUIRE(monomial_filtration({}) == 0);
    auto s = build_state(1, false, {{Kind::Beta, 1, -1}});
    REQUIRE(filtration_degree(s) == -1);
    REQUIRE_THROWS_AS(filtration_degree(VAState(1, false)), std::invalid_argument);
    REQUIRE_THROWS_AS(filtration_degree(vacuum_state(1, true)), std::invalid_argument);
}

TEST_CASE("a polynomial zero-mode product drops to degree zero, not below") {
    // gamma_{-1}|0> (0) beta_{-1}|0> = -|0>: degree 0 >= 0 + (-1) + 1
    auto f = build_state(1, false, {{Kind::Gamma, 1, -1}});
    auto a = build_state(1, false, {{Kind::Beta, 1, -1}});
    auto p = nth_product(f, 0, a);
    REQUIRE(p == vacuum_state(1, false).scale(-1));
    REQUIRE(filtration_degree(p) == 0);
}

TEST_CASE("fuzz: product filtration and weight bounds hold on 1000 pairs") {
    FiltrationReport rep = check_filtration(1000, 20260815u);
    CAPTURE(rep.witnesses);
    REQUIRE(rep.pairs == 1000);
    REQUIRE(rep.violations == 0);
    REQUIRE(rep.pass());
    REQUIRE(rep.product_checks > 1000);
    REQUIRE(rep.polynomial_checks > 500);
    REQUIRE(rep.bound_checks > 2000);
}

TEST_CASE("fuzz is deterministic in the seed") {
    FiltrationReport a = check_filtration(50, 7u);
    FiltrationReport b = check_filtration(50, 7u);
    REQUIRE(a.product_checks == b.product_checks);
    REQUIRE(a.polynomial_checks == b.polynomial_checks);
    REQUIRE(a.bound_checks == b.bound_checks);
}
