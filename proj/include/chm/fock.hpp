#pragma once
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chm/generators.hpp"
#include "chm/products.hpp"
#include "chm/vertex.hpp"

namespace chm {

namespace detail {

// Adjoints on the gr Fock space, from (1,1) = 1 and the flat metric:
// B_(n)* = A_(-n), A_(n)* = B_(-n), b_(n)* = c_(-n-1), c_(n)* = b_(-n-1).
inline Mode adjoint_mode(const Mode& m) {
    switch (m.kind) {
        case Kind::Beta: return Mode{Kind::Gamma, m.index, -m.n};
        case Kind::Gamma: return Mode{Kind::Beta, m.index, -m.n};
        case Kind::BF: return Mode{Kind::CF, m.index, -m.n - 1};
        case Kind::CF: return Mode{Kind::BF, m.index, -m.n - 1};
    }
    throw std::logic_error("unreachable");
}

}  // namespace detail

// Hermitian pairing on the gr Fock space; rational scalars make conjugation
// trivial, so this is the bilinear form with the stated adjoints. Peels the
// modes of each left monomial onto the right state and reads the vacuum
// coefficient.
inline Rat fock_inner_product(const VAState& a, const VAState& b) {
    if (!a.gr || !b.gr)
        throw std::invalid_argument("fock_inner_product expects gr states");
    if (a.N != b.N) throw std::invalid_argument("dimension mismatch");
    Rat out = 0;
    for (const auto& [mono, ca] : a.terms) {
        VAState cur = b;
        for (const auto& x : mono) {
            cur = apply_mode(detail::adjoint_mode(x), cur);
            if (cur.is_zero()) break;
        }
        auto it = cur.terms.find(Monomial{});
        if (it != cur.terms.end()) out += ca * it->second;
    }
    return out;
}

struct AdjointnessEntry {
    std::string relation;
    long cases = 0;
    bool pass = true;
    int measured_sign = 0;  // for the sign-bearing relations; 0 = n/a or none
    std::string witness;
};

struct AdjointnessReport {
    std::vector<AdjointnessEntry> entries;
    bool pass = true;
    std::string summary() const {
        std::ostringstream os;
        for (const auto& e : entries) {
            os << (e.pass ? "pass" : "FAIL") << "  " << e.relation << "  ("
               << e.cases << " cases";
            if (e.measured_sign != 0)
                os << ", measured sign " << (e.measured_sign > 0 ? "+1" : "-1");
            os << ")";
            if (!e.witness.empty()) os << "  witness: " << e.witness;
            os << "\n";
        }
        return os.str();
    }
};

namespace detail {

struct AdjointRelation {
    std::string name;
    VAState op;
    // right-hand operator applied to b for left mode number n
    std::function<VAState(long, const VAState&)> partner;
    int expected_sign;  // +1 or -1; relation is (Op_(n)a, b) = sign (a, P(n) b)
    bool report_sign;   // measure and report the sign (the 3.3/3.6 family)
};

struct GradedBasis {
    std::vector<VAState> states;
    // indices grouped by (weight, fermion number)
    std::map<std::pair<long, long>, std::vector<std::size_t>> buckets;
    long max_weight = 0;
};

inline GradedBasis gr_graded_basis(int N, long max_weight) {
    GradedBasis gb;
    gb.max_weight = max_weight;
    for (const auto& m : gr_basis(N, max_weight)) {
        VAState s(N, true);
        s.terms.emplace(m, Rat(1));
        gb.buckets[{monomial_weight(m, true), fermion_number(m)}].push_back(
            gb.states.size());
        gb.states.push_back(std::move(s));
    }
    return gb;
}

inline long state_fermion_number(const VAState& s) {
    if (s.terms.empty()) return 0;
    return fermion_number(s.terms.begin()->first);
}

// Checks one relation on all basis pairs with matching gradings; products
// are cached per (operator, mode number, state). The measured sign is the
// unique s with lhs = s*rhs across all nonzero cases.
inline AdjointnessEntry run_relation(const AdjointRelation& rel,
                                     const GradedBasis& gb) {
    AdjointnessEntry out;
    out.relation = rel.name;
    bool ok_plus = true, ok_minus = true, nonzero_seen = false;
    std::string wit_plus, wit_minus;
    const long wop = state_max_weight(rel.op);
    const long pop = state_fermion_number(rel.op);
    std::map<std::pair<long, std::size_t>, VAState> pcache;

    for (std::size_t ai = 0; ai < gb.states.size(); ++ai) {
        const VAState& a = gb.states[ai];
        const long wa = a.weight();
        const long pa = state_fermion_number(a);
        for (long wb = 0; wb <= gb.max_weight; ++wb) {
            auto bit = gb.buckets.find({wb, pa + pop});
            if (bit == gb.buckets.end()) continue;
            const long n = wop + wa - wb - 1;
            VAState lhs_state = nth_product(rel.op, n, a);
            for (std::size_t bi : bit->second) {
                const VAState& b = gb.states[bi];
                Rat lhs = fock_inner_product(lhs_state, b);
                auto key = std::make_pair(n, bi);
                auto it = pcache.find(key);
                if (it == pcache.end())
                    it = pcache.emplace(key, rel.partner(n, b)).first;
                Rat rhs = fock_inner_product(a, it->second);
                ++out.cases;
                if (lhs != 0 || rhs != 0) nonzero_seen = true;
                if (ok_plus && lhs != rhs) {
                    ok_plus = false;
                    wit_plus = "a#" + std::to_string(ai) + " b#" +
                               std::to_string(bi) + " n=" + std::to_string(n) +
                               ": " + rat_str(lhs) + " vs " + rat_str(rhs);
                }
                if (ok_minus && lhs != -rhs) {
                    ok_minus = false;
                    wit_minus = "a#" + std::to_string(ai) + " b#" +
                                std::to_string(bi) + " n=" + std::to_string(n) +
                                ": " + rat_str(lhs) + " vs -(" + rat_str(rhs) + ")";
                }
                if (!ok_plus && !ok_minus) goto done;
            }
        }
    }
done:
    if (!nonzero_seen) {
        out.pass = false;
        out.witness = "degenerate: no nonzero case";
        return out;
    }
    if (rel.report_sign) {
        if (ok_plus && !ok_minus) out.measured_sign = 1;
        if (ok_minus && !ok_plus) out.measured_sign = -1;
        if (ok_plus && ok_minus) out.measured_sign = rel.expected_sign;
    }
    out.pass = (rel.expected_sign > 0) ? ok_plus : ok_minus;
    if (!out.pass) out.witness = (rel.expected_sign > 0) ? wit_plus : wit_minus;
    return out;
}

inline std::vector<AdjointRelation> adjoint_relations(const GeneratorSet& g) {
    auto single = [](const VAState& p, long c0, long c1) {
        // partner mode number c0 + c1*n
        return [p, c0, c1](long n, const VAState& b) {
            return nth_product(p, c0 + c1 * n, b);
        };
    };
    std::vector<AdjointRelation> rels;
    rels.push_back({"(Q_(n)a,b) = (a, G_(-n+1)b)", g.Q, single(g.G, 1, -1), +1, false});
    rels.push_back({"(J_(n)a,b) = (a, J_(-n)b)", g.J, single(g.J, 0, -1), +1, false});
    VAState L = g.L, J = g.J;
    rels.push_back({"(L_(n)a,b) = (a, (L_(-n+2) - (n-1)J_(-n+1))b)", g.L,
                    [L, J](long n, const VAState& b) {
                        return nth_product(L, -n + 2, b) +
                               nth_product(J, -n + 1, b).scale(Rat(-(n - 1)));
                    },
                    +1, false});
    rels.push_back({"(D_(n)a,b) = -(a, E_(-n)b)", g.D, single(g.E, 0, -1), -1, true});
    rels.push_back({"(B_(n)a,b) = (a, C_(1-n)b)", g.B, single(g.C, 1, -1), +1, true});
    if (g.flat) {
        rels.push_back({"(D1_(n)a,b) = (a, E1_(-n)b)", g.D1, single(g.E1, 0, -1),
                        +1, true});
        rels.push_back({"(B1_(n)a,b) = -(a, C1_(1-n)b)", g.B1, single(g.C1, 1, -1),
                        -1, true});
    }
    return rels;
}

}  // namespace detail

// Verifies every metric adjointness relation exactly on the full gr basis
// through max_weight at N = 2 (flat model). The D1/B1 pair cannot both carry
// a plus sign for any rescaling of D1 (see measure_flat_signs); the expected
// signs here are the engine's measured table and the report records them.
inline AdjointnessReport check_adjointness(long max_weight) {
    GeneratorSet g = gr_generators(2, true);
    auto gb = detail::gr_graded_basis(2, max_weight);
    AdjointnessReport rep;
    for (const auto& rel : detail::adjoint_relations(g)) {
        auto e = detail::run_relation(rel, gb);
        rep.pass = rep.pass && e.pass;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

// Sign experiment for the flat quadruple: with E1 = E and D1 = delta*D,
// measure the signs s_D, s_B in (D1_(n)a,b) = s_D (a, E1_(-n)b) and
// (B1_(n)a,b) = s_B (a, C1_(1-n)b) on the weight <= max_weight basis.
// Returns (s_D, s_B), 0 entries when neither sign works.
inline std::pair<int, int> measure_flat_signs(int delta, long max_weight) {
    GeneratorSet g = gr_generators(2, false);
    VAState e1 = g.E;
    VAState d1 = g.D.scale(delta);
    VAState b1 = nth_product(g.Q, 0, d1);
    VAState c1 = nth_product(g.G, 0, e1);
    auto gb = detail::gr_graded_basis(2, max_weight);

    auto measure = [&](const VAState& op, const VAState& par, long c0) {
        detail::AdjointRelation rel{
            "probe", op,
            [par, c0](long n, const VAState& b) {
                return nth_product(par, c0 - n, b);
            },
            +1, true};
        auto e = detail::run_relation(rel, gb);
        return e.measured_sign;
    };
    return {measure(d1, e1, 0), measure(b1, c1, 1)};
}

}  // namespace chm
