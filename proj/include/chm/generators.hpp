#pragma once
#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chm/errors.hpp"
#include "chm/linalg.hpp"
#include "chm/products.hpp"
#include "chm/vertex.hpp"

namespace chm {

// Superconformal generator states. B and C are always produced by the
// engine's own 0-th products, never entered by hand. The flat-symplectic
// quadruple at N = 2 uses the recorded convention omega_12 = 1/2 (E1 = E)
// with D1 = -E1-dual pinned by the adjointness relation for D1.
struct GeneratorSet {
    int N = 0;
    bool gr = false;
    bool flat = false;
    VAState Q, L, J, G, D, E, B, C;
    VAState E1, D1, B1, C1;  // populated only when flat

    // Name/state pairs; for flat N = 2 the V1 generator list
    // (Q, L, J, G, E1, D1, B1, C1), otherwise (Q, L, J, G, D, E, B, C).
    std::vector<std::pair<std::string, const VAState*>> list() const {
        if (flat)
            return {{"Q", &Q}, {"L", &L}, {"J", &J}, {"G", &G},
                    {"E1", &E1}, {"D1", &D1}, {"B1", &B1}, {"C1", &C1}};
        return {{"Q", &Q}, {"L", &L}, {"J", &J}, {"G", &G},
                {"D", &D}, {"E", &E}, {"B", &B}, {"C", &C}};
    }
};

namespace detail {

inline GeneratorSet build_generators(int N, bool gr, bool flat) {
    if (N < 1) throw std::invalid_argument("N must be positive");
    if (flat && N != 2)
        throw std::invalid_argument("flat symplectic generators need N = 2");
    GeneratorSet g;
    g.N = N;
    g.gr = gr;
    g.flat = flat;
    // The weight-1 partner of beta is gamma_(-2) chirally and A_(-1) in gr.
    const long gdepth = gr ? -1 : -2;
    g.Q = VAState(N, gr);
    g.L = VAState(N, gr);
    g.J = VAState(N, gr);
    g.G = VAState(N, gr);
    for (int i = 1; i <= N; ++i) {
        g.Q += build_state(N, gr, {{Kind::Beta, i, -1}, {Kind::CF, i, -1}});
        g.L += build_state(N, gr, {{Kind::Beta, i, -1}, {Kind::Gamma, i, gdepth}});
        g.L += build_state(N, gr, {{Kind::BF, i, -1}, {Kind::CF, i, -2}}).scale(-1);
        g.J += build_state(N, gr, {{Kind::BF, i, -1}, {Kind::CF, i, -1}}).scale(-1);
        g.G += build_state(N, gr, {{Kind::BF, i, -1}, {Kind::Gamma, i, gdepth}});
    }
    std::vector<Mode> bs, cs;
    for (int i = 1; i <= N; ++i) {
        bs.push_back({Kind::BF, i, -1});
        cs.push_back({Kind::CF, i, -1});
    }
    g.D = build_state(N, gr, bs);
    g.E = build_state(N, gr, cs);
    g.B = nth_product(g.Q, 0, g.D);
    g.C = nth_product(g.G, 0, g.E);
    if (flat) {
        g.E1 = g.E;
        g.D1 = g.D.scale(-1);
        g.B1 = nth_product(g.Q, 0, g.D1);
        g.C1 = nth_product(g.G, 0, g.E1);
    }
    return g;
}

}  // namespace detail

inline GeneratorSet standard_generators(int N, bool flat_symplectic = false) {
    return detail::build_generators(N, false, flat_symplectic);
}

inline GeneratorSet gr_generators(int N, bool flat_symplectic = false) {
    return detail::build_generators(N, true, flat_symplectic);
}

// Span of {vacuum, generators, T^k generators} up to the given weight,
// as named states for membership reporting.
inline std::vector<std::pair<std::string, VAState>> generator_span(
    const GeneratorSet& g, long max_weight) {
    std::vector<std::pair<std::string, VAState>> span;
    span.emplace_back("1", vacuum_state(g.N, g.gr));
    for (const auto& [name, st] : g.list()) {
        VAState cur = *st;
        long w = detail::state_max_weight(cur);
        if (w <= max_weight && !cur.is_zero()) span.emplace_back(name, cur);
        for (long k = 1; w + k <= max_weight; ++k) {
            cur = translate(cur);
            if (cur.is_zero()) break;
            span.emplace_back("T^" + std::to_string(k) + " " + name, cur);
        }
    }
    return span;
}

// Exact coordinates of `target` in the span, or nullopt.
inline std::optional<std::vector<Rat>> span_membership(
    const std::vector<std::pair<std::string, VAState>>& span, const VAState& target) {
    std::map<Monomial, std::size_t> coords;
    auto note = [&](const VAState& s) {
        for (const auto& [m, c] : s.terms)
            coords.emplace(m, coords.size());
    };
    for (const auto& [name, s] : span) note(s);
    note(target);
    Mat a(coords.size(), Vec(span.size(), Rat(0)));
    Vec b(coords.size(), Rat(0));
    for (std::size_t j = 0; j < span.size(); ++j)
        for (const auto& [m, c] : span[j].second.terms) a[coords[m]][j] = c;
    for (const auto& [m, c] : target.terms) b[coords[m]] = c;
    return solve_any(a, b);
}

struct BracketEntry {
    std::string a, b;
    long n = 0;
    bool in_span = false;
    std::string expr;  // span expression when in_span
    VAState value;
};

struct BracketTable {
    std::vector<BracketEntry> entries;
    bool all_closed = true;
};

// All a_(n)b over ordered generator pairs for 0 <= n <= max_n, each written
// in the span of vacuum, generators, and iterated translates when possible.
inline BracketTable lambda_bracket_table(const GeneratorSet& g, long max_n) {
    auto gens = g.list();
    long wmax = 0;
    for (const auto& [na, sa] : gens)
        for (const auto& [nb, sb] : gens)
            wmax = std::max(wmax, detail::state_max_weight(*sa) +
                                      detail::state_max_weight(*sb));
    auto span = generator_span(g, wmax > 0 ? wmax - 1 : 0);

    BracketTable table;
    for (const auto& [na, sa] : gens)
        for (const auto& [nb, sb] : gens)
            for (long n = 0; n <= max_n; ++n) {
                BracketEntry e;
                e.a = na;
                e.b = nb;
                e.n = n;
                e.value = nth_product(*sa, n, *sb);
                if (e.value.is_zero()) {
                    e.in_span = true;
                    e.expr = "0";
                } else if (auto x = span_membership(span, e.value)) {
                    e.in_span = true;
                    std::ostringstream os;
                    bool first = true;
                    for (std::size_t j = 0; j < span.size(); ++j)
                        if ((*x)[j] != 0) {
                            if (!first) os << " + ";
                            os << rat_str((*x)[j]) << "*" << span[j].first;
                            first = false;
                        }
                    e.expr = first ? "0" : os.str();
                } else {
                    table.all_closed = false;
                }
                table.entries.push_back(std::move(e));
            }
    return table;
}

// gamma- and c-type modes transform by M, beta- and b-type by the inverse
// transpose; linear coordinate changes only (no second-derivative term).
inline VAState linear_transform(const VAState& s, const Mat& m) {
    if (m.size() != static_cast<std::size_t>(s.N))
        throw std::invalid_argument("matrix size disagrees with N");
    for (const auto& row : m)
        if (row.size() != static_cast<std::size_t>(s.N))
            throw std::invalid_argument("matrix size disagrees with N");
    Mat minv = inverse(m);  // throws SingularMatrix
    VAState out(s.N, s.gr);
    for (const auto& [mono, coef] : s.terms) {
        VAState cur = vacuum_state(s.N, s.gr);
        for (std::size_t j = mono.size(); j-- > 0;) {
            const Mode& x = mono[j];
            VAState next(s.N, s.gr);
            bool cov = (x.kind == Kind::Gamma || x.kind == Kind::CF);
            for (int t = 1; t <= s.N; ++t) {
                const Rat& w = cov ? m[x.index - 1][t - 1] : minv[t - 1][x.index - 1];
                if (w != 0)
                    next += apply_mode(Mode{x.kind, t, x.n}, cur).scale(w);
            }
            cur = next;
            if (cur.is_zero()) break;
        }
        out += cur.scale(coef);
    }
    return out;
}

// Canonical gr monomial basis through the given conformal weight: bosonic
// B^i_(-m), A^i_(-m) and fermionic b^i_(-m) of weight m >= 1, fermionic
// c^i_(-m) of weight m-1 >= 0. The weight-0 modes c^i_(-1) are fermionic,
// so every weight level is finite-dimensional.
inline std::vector<Monomial> gr_basis(int N, long max_weight) {
    struct Pool {
        Mode mode;
        long w;
    };
    std::vector<Pool> pool;
    for (Kind k : {Kind::Beta, Kind::Gamma, Kind::BF, Kind::CF})
        for (int i = 1; i <= N; ++i)
            for (long m = 1;; ++m) {
                Mode md{k, i, -m};
                long w = mode_weight(md, true);
                if (w > max_weight) break;
                pool.push_back({md, w});
            }
    std::vector<Monomial> out;
    Monomial cur;
    std::function<void(std::size_t, long)> go = [&](std::size_t i, long rem) {
        if (i == pool.size()) {
            out.push_back(cur);
            return;
        }
        const Pool& p = pool[i];
        long maxc = is_fermion(p.mode.kind) ? 1 : (p.w > 0 ? rem / p.w : 0);
        go(i + 1, rem);  // count 0
        for (long c = 1; c <= maxc; ++c) {
            if (p.w * c > rem) break;
            for (long t = 0; t < c; ++t) cur.push_back(p.mode);
            go(i + 1, rem - p.w * c);
            for (long t = 0; t < c; ++t) cur.pop_back();
        }
    };
    go(0, max_weight);
    // Canonical order within each monomial: the pool is iterated in
    // (kind, index, n)-compatible order per (kind, index) block but depths
    // descend (-1, -2, ...), so sort each monomial once.
    for (auto& m : out) std::sort(m.begin(), m.end());
    std::sort(out.begin(), out.end());
    return out;
}

// dim[(k, p)] over weight k <= k_max and fermion number p, counting
// canonical gr monomials.
inline std::map<std::pair<long, long>, Int> graded_dimension(int N, long k_max) {
    std::map<std::pair<long, long>, Int> dim;
    for (const auto& m : gr_basis(N, k_max))
        dim[{monomial_weight(m, true), fermion_number(m)}] += 1;
    return dim;
}

}  // namespace chm
