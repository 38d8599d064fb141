#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <stdexcept>

#include "chm/generators.hpp"
#include "chm/products.hpp"
#include "chm/qyseries.hpp"
#include "chm/vertex.hpp"

using namespace chm;

namespace {

// Generating function of the graded Fock dimensions: weight-n bosonic pairs
// contribute (1-q^n)^{-2N}, weight-n fermions (1+1/y q^n)^N, weight-(n-1)
// fermions (1+y q^(n-1))^N. Weight k sits at q24 = 24k, fermion number p at
// y2 = 2p.
QYSeries fock_product_formula(int N, long k_max) {
    const long P = 24 * (k_max + 1);
    QYSeries v = QYSeries::one(P);
    for (long n = 1; n <= k_max + 1; ++n) {
        QYSeries boson =
            (QYSeries::one(P) - QYSeries::mono(1, 24 * n, 0, P)).invert();
        QYSeries bfac = QYSeries::one(P) + QYSeries::mono(1, 24 * n, -2, P);
        QYSeries cfac =
            QYSeries::one(P) + QYSeries::mono(1, 24 * (n - 1), 2, P);
        for (int t = 0; t < N; ++t) v = v * boson * boson * bfac * cfac;
    }
    return v;
}

}  // namespace

TEST_CASE("graded dimensions match the product formula") {
    for (int N : {1, 2}) {
        auto dims = graded_dimension(N, 4);
        QYSeries v = fock_product_formula(N, 4);
        for (long k = 0; k <= 4; ++k) {
            std::map<long, Rat> want;
            for (const auto& [key, d] : dims)
                if (key.first == k) want[2 * key.second] = Rat(d);
            CAPTURE(N, k);
            REQUIRE(v.q_coeff(24 * k) == want);
        }
    }
}

TEST_CASE("weight-0 row is the c-mode exterior algebra") {
    // only the weight-0 modes c^i_(-1) contribute: dims (1+y)^N
    auto d1 = graded_dimension(1, 0);
    REQUIRE(d1 == std::map<std::pair<long, long>, Int>{{{0, 0}, 1},
                                                       {{0, 1}, 1}});
    auto d2 = graded_dimension(2, 0);
    REQUIRE(d2 == std::map<std::pair<long, long>, Int>{
                      {{0, 0}, 1}, {{0, 1}, 2}, {{0, 2}, 1}});
    // weight 1 at N=2: eight weight-1 modes dressed by any of the four
    // c_(-1) subsets
    auto full = graded_dimension(2, 1);
    Int total = 0;
    for (const auto& [key, d] : full)
        if (key.first == 1) total += d;
    REQUIRE(total == 32);
}

TEST_CASE("symbol map carries generators to generators") {
    GeneratorSet grg = gr_generators(2, true);
    GeneratorSet chg = standard_generators(2, true);
    std::vector<std::pair<const VAState*, const VAState*>> fields = {
        {&grg.Q, &chg.Q},   {&grg.L, &chg.L},   {&grg.J, &chg.J},
        {&grg.G, &chg.G},   {&grg.D, &chg.D},   {&grg.E, &chg.E},
        {&grg.B, &chg.B},   {&grg.C, &chg.C},   {&grg.E1, &chg.E1},
        {&grg.D1, &chg.D1}, {&grg.B1, &chg.B1}, {&grg.C1, &chg.C1}};
    for (std::size_t i = 0; i < fields.size(); ++i) {
        CAPTURE(i);
        REQUIRE_FALSE(fields[i].first->is_zero());
        REQUIRE(to_chiral(*fields[i].first) == *fields[i].second);
    }
    auto gl = grg.list();
    auto cl = chg.list();
    REQUIRE(gl.size() == 8);
    for (std::size_t i = 0; i < gl.size(); ++i)
        REQUIRE(gl[i].first == cl[i].first);
}

TEST_CASE("symbol map intertwines n-th products") {
    GeneratorSet grg = gr_generators(2, true);
    auto gens = grg.list();
    for (const auto& [na, sa] : gens) {
        for (const auto& [nb, sb] : gens) {
            long top = detail::state_max_weight(*sa) +
                       detail::state_max_weight(*sb);
            for (long n = -2; n <= top + 1; ++n) {
                CAPTURE(na, nb, n);
                REQUIRE(to_chiral(nth_product(*sa, n, *sb)) ==
                        nth_product(to_chiral(*sa), n, to_chiral(*sb)));
            }
        }
    }
}

TEST_CASE("symbol map intertwines products of random states") {
    auto basis = gr_basis(2, 3);
    std::mt19937_64 rng(20260815u);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<long> nn(-2, 4);
    for (int it = 0; it < 200; ++it) {
        VAState a = build_state(2, true, basis[pick(rng)]);
        VAState b = build_state(2, true, basis[pick(rng)]);
        long n = nn(rng);
        CAPTURE(a.text(), b.text(), n);
        REQUIRE(to_chiral(nth_product(a, n, b)) ==
                nth_product(to_chiral(a), n, to_chiral(b)));
    }
}

TEST_CASE("symbol map round-trips and rejects polynomial directions") {
    for (const auto& m : gr_basis(2, 3)) {
        VAState s = build_state(2, true, m);
        VAState c = to_chiral(s);
        REQUIRE_FALSE(c.gr);
        REQUIRE(gr_project(c) == s);
        REQUIRE(c.weight() == s.weight());
    }
    auto poly = build_state(2, false, {{Kind::Gamma, 1, -1}});
    REQUIRE_THROWS_AS(gr_project(poly), std::invalid_argument);
    REQUIRE_THROWS_AS(to_chiral(vacuum_state(2, false)), std::invalid_argument);
    REQUIRE_THROWS_AS(gr_project(vacuum_state(2, true)), std::invalid_argument);
}

TEST_CASE("gr bracket table agrees with the chiral table") {
    BracketTable grt = lambda_bracket_table(gr_generators(2, true), 3);
    BracketTable cht = lambda_bracket_table(standard_generators(2, true), 3);
    REQUIRE(grt.all_closed);
    REQUIRE(cht.all_closed);
    REQUIRE(grt.entries.size() == cht.entries.size());
    for (std::size_t i = 0; i < grt.entries.size(); ++i) {
        const auto& ge = grt.entries[i];
        const auto& ce = cht.entries[i];
        CAPTURE(ge.a, ge.b, ge.n);
        REQUIRE(ge.a == ce.a);
        REQUIRE(ge.b == ce.b);
        REQUIRE(ge.n == ce.n);
        REQUIRE(ge.in_span);
        REQUIRE(ce.in_span);
        REQUIRE(to_chiral(ge.value) == ce.value);
        bool core = (ge.a == "Q" || ge.a == "L" || ge.a == "J" || ge.a == "G") &&
                    (ge.b == "Q" || ge.b == "L" || ge.b == "J" || ge.b == "G");
        if (core) REQUIRE(ge.expr == ce.expr);
    }
}
