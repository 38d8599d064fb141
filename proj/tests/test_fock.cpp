#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>

#include "chm/fock.hpp"
#include "chm/generators.hpp"
#include "chm/products.hpp"
#include "chm/vertex.hpp"

using namespace chm;

namespace {

const detail::GradedBasis& basis3() {
    static detail::GradedBasis gb = detail::gr_graded_basis(2, 3);
    return gb;
}

const AdjointnessEntry& entry_named(const AdjointnessReport& rep,
                                    const std::string& needle) {
    for (const auto& e : rep.entries)
        if (e.relation.find(needle) != std::string::npos) return e;
    throw std::runtime_error("no entry matching " + needle);
}

}  // namespace

TEST_CASE("inner product: vacuum and single-mode norms") {
    REQUIRE(fock_inner_product(vacuum_state(2, true), vacuum_state(2, true)) ==
            Rat(1));
    for (long n = 1; n <= 3; ++n) {
        auto s = build_state(2, true, {{Kind::Beta, 1, -n}});
        REQUIRE(fock_inner_product(s, s) == Rat(n));
    }
    auto bf = build_state(2, true, {{Kind::BF, 1, -1}});
    auto cf = build_state(2, true, {{Kind::CF, 1, -1}});
    REQUIRE(fock_inner_product(bf, bf) == Rat(1));
    REQUIRE(fock_inner_product(cf, cf) == Rat(1));
    // repeated bosonic mode picks up the multiplicity
    auto bb = build_state(2, true, {{Kind::Beta, 1, -1}, {Kind::Beta, 1, -1}});
    REQUIRE(fock_inner_product(bb, bb) == Rat(2));
    auto mixed =
        build_state(2, true, {{Kind::Beta, 1, -2}, {Kind::Beta, 1, -1}});
    REQUIRE(fock_inner_product(mixed, mixed) == Rat(2));
    auto pair = build_state(2, true, {{Kind::BF, 1, -1}, {Kind::CF, 1, -1}});
    REQUIRE(fock_inner_product(pair, pair) == Rat(1));
}

TEST_CASE("inner product: guards") {
    auto chiral = vacuum_state(2, false);
    auto gr = vacuum_state(2, true);
    REQUIRE_THROWS_AS(fock_inner_product(chiral, gr), std::invalid_argument);
    REQUIRE_THROWS_AS(fock_inner_product(gr, chiral), std::invalid_argument);
    REQUIRE_THROWS_AS(fock_inner_product(gr, vacuum_state(1, true)),
                      std::invalid_argument);
}

TEST_CASE("inner product: monomial basis is orthogonal with positive norms") {
    const auto& gb = basis3();
    REQUIRE(gb.states.size() > 100);
    long checked = 0;
    for (const auto& [key, idx] : gb.buckets) {
        for (std::size_t i = 0; i < idx.size(); ++i) {
            for (std::size_t j = i; j < idx.size(); ++j) {
                Rat v = fock_inner_product(gb.states[idx[i]], gb.states[idx[j]]);
                if (i == j) {
                    REQUIRE(v > 0);
                } else {
                    REQUIRE(v == 0);
                    REQUIRE(fock_inner_product(gb.states[idx[j]],
                                               gb.states[idx[i]]) == 0);
                }
                ++checked;
            }
        }
    }
    REQUIRE(checked > 1000);
    // distinct gradings pair to zero
    auto a = build_state(2, true, {{Kind::Gamma, 1, -1}});
    auto c = build_state(2, true, {{Kind::CF, 2, -1}});
    REQUIRE(fock_inner_product(a, c) == 0);
    REQUIRE(fock_inner_product(a, vacuum_state(2, true)) == 0);
}

TEST_CASE("inner product: mode adjoints are the defining property") {
    // (m a, b) = (a, m* b) for every mode and basis pair, all crossing signs
    // included.
    const auto& gb = basis3();
    long checked = 0;
    for (const auto& a : gb.states) {
        if (a.weight() > 2) continue;
        for (int kind = 0; kind < 4; ++kind) {
            for (int index = 1; index <= 2; ++index) {
                for (long n = -2; n <= 2; ++n) {
                    Mode m{static_cast<Kind>(kind), index, n};
                    if ((m.kind == Kind::Beta || m.kind == Kind::Gamma) &&
                        n == 0)
                        continue;  // those modes vanish identically on gr
                    Mode ms = detail::adjoint_mode(m);
                    VAState ma = apply_mode(m, a);
                    if (ma.is_zero()) continue;
                    auto bucket = gb.buckets.find(
                        {ma.weight(), detail::state_fermion_number(ma)});
                    if (bucket == gb.buckets.end()) continue;
                    for (std::size_t bi : bucket->second) {
                        const VAState& b = gb.states[bi];
                        REQUIRE(fock_inner_product(ma, b) ==
                                fock_inner_product(a, apply_mode(ms, b)));
                        ++checked;
                    }
                }
            }
        }
    }
    REQUIRE(checked > 2000);
}

TEST_CASE("gr zero modes annihilate every state") {
    const auto& gb = basis3();
    for (const auto& s : gb.states) {
        for (int index = 1; index <= 2; ++index) {
            REQUIRE(apply_mode({Kind::Beta, index, 0}, s).is_zero());
            REQUIRE(apply_mode({Kind::Gamma, index, 0}, s).is_zero());
        }
    }
}

TEST_CASE("adjointness battery passes on the full weight <= 3 basis") {
    AdjointnessReport rep = check_adjointness(3);
    CAPTURE(rep.summary());
    REQUIRE(rep.entries.size() == 7);
    for (const auto& e : rep.entries) {
        CAPTURE(e.relation, e.witness);
        REQUIRE(e.pass);
        REQUIRE(e.cases > 0);
    }
    REQUIRE(rep.pass);
    REQUIRE(entry_named(rep, "D_(n)").measured_sign == -1);
    REQUIRE(entry_named(rep, "B_(n)").measured_sign == +1);
    REQUIRE(entry_named(rep, "D1_(n)").measured_sign == +1);
    REQUIRE(entry_named(rep, "B1_(n)").measured_sign == -1);
}

TEST_CASE("adjointness battery rejects a wrong sign or wrong partner") {
    GeneratorSet g = gr_generators(2, true);
    auto gb = detail::gr_graded_basis(2, 2);
    detail::AdjointRelation flipped{
        "flipped Q", g.Q,
        [&g](long n, const VAState& b) { return nth_product(g.G, -n + 1, b); },
        -1, false};
    REQUIRE_FALSE(detail::run_relation(flipped, gb).pass);
    detail::AdjointRelation mismatched{
        "Q against J", g.Q,
        [&g](long n, const VAState& b) { return nth_product(g.J, -n, b); },
        +1, false};
    REQUIRE_FALSE(detail::run_relation(mismatched, gb).pass);
}

TEST_CASE("flat pair signs: rescaling moves the sign, never to (+1,+1)") {
    auto engine = measure_flat_signs(-1, 3);
    REQUIRE(engine.first == +1);
    REQUIRE(engine.second == -1);
    auto flipped = measure_flat_signs(+1, 3);
    REQUIRE(flipped.first == -1);
    REQUIRE(flipped.second == +1);
    REQUIRE_FALSE((engine.first == +1 && engine.second == +1));
    REQUIRE_FALSE((flipped.first == +1 && flipped.second == +1));
}
