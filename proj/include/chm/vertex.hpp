#pragma once
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "chm/rational.hpp"

namespace chm {

// Mode kinds for the two parallel algebras sharing one engine:
//   chiral (gr = false): beta/gamma bosonic pair, b/c fermionic pair,
//     [beta^i_m, gamma^j_n] = delta^ij delta_{m+n,-1},
//     {b^i_m, c^j_n} = delta^ij delta_{m+n,-1};
//   associated graded (gr = true): Beta plays B, Gamma plays A,
//     [B^i_m, A^j_n] = m delta^ij delta_{m+n,0}, fermions as before,
//     and B_0, A_0 act as zero.
enum class Kind : int { Beta = 0, Gamma = 1, BF = 2, CF = 3 };

inline bool is_fermion(Kind k) { return k == Kind::BF || k == Kind::CF; }

inline const char* kind_name(Kind k, bool gr) {
    switch (k) {
        case Kind::Beta: return gr ? "B" : "beta";
        case Kind::Gamma: return gr ? "A" : "gamma";
        case Kind::BF: return "b";
        case Kind::CF: return "c";
    }
    return "?";
}

struct Mode {
    Kind kind;
    int index;  // coordinate label 1..N
    long n;     // mode number

    bool operator<(const Mode& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (index != o.index) return index < o.index;
        return n < o.n;
    }
    bool operator==(const Mode& o) const {
        return kind == o.kind && index == o.index && n == o.n;
    }
};

// Conformal weight of x_(n): (-n-1) + Delta. Chiral: Delta = 1 for beta and
// b, 0 for gamma and c. In gr, A carries Delta = 1 (A_{-m} has weight m).
inline long mode_weight(const Mode& m, bool gr) {
    long delta = (m.kind == Kind::Beta || m.kind == Kind::BF) ? 1 : 0;
    if (gr && m.kind == Kind::Gamma) delta = 1;
    return -m.n - 1 + delta;
}

using Monomial = std::vector<Mode>;  // canonical: sorted, creation modes only

inline long monomial_weight(const Monomial& m, bool gr) {
    long w = 0;
    for (const auto& x : m) w += mode_weight(x, gr);
    return w;
}

inline int monomial_parity(const Monomial& m) {
    int p = 0;
    for (const auto& x : m)
        if (is_fermion(x.kind)) p ^= 1;
    return p;
}

// Fermion number p = #c-modes - #b-modes.
inline long fermion_number(const Monomial& m) {
    long p = 0;
    for (const auto& x : m) {
        if (x.kind == Kind::CF) ++p;
        if (x.kind == Kind::BF) --p;
    }
    return p;
}

struct VAState {
    int N = 1;
    bool gr = false;
    std::map<Monomial, Rat> terms;

    VAState() = default;
    VAState(int n, bool g) : N(n), gr(g) {}

    bool is_zero() const { return terms.empty(); }

    void add_term(const Monomial& m, const Rat& c) {
        if (c == 0) return;
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    VAState& operator+=(const VAState& o) {
        for (const auto& [m, c] : o.terms) add_term(m, c);
        return *this;
    }

    VAState operator+(const VAState& o) const {
        VAState out = *this;
        out += o;
        return out;
    }

    VAState operator-(const VAState& o) const { return *this + o.scale(-1); }

    VAState scale(const Rat& c) const {
        VAState out(N, gr);
        if (c == 0) return out;
        for (const auto& [m, v] : terms) out.terms.emplace(m, v * c);
        return out;
    }

    bool operator==(const VAState& o) const {
        return N == o.N && gr == o.gr && terms == o.terms;
    }

    // True when all monomials share one conformal weight; weight() then
    // reports it (vacuum counts as weight 0).
    bool homogeneous() const {
        long w = -1;
        for (const auto& [m, c] : terms) {
            long mw = monomial_weight(m, gr);
            if (w == -1)
                w = mw;
            else if (w != mw)
                return false;
        }
        return true;
    }

    long weight() const {
        if (terms.empty()) return 0;
        return monomial_weight(terms.begin()->first, gr);
    }

    int parity() const {
        if (terms.empty()) return 0;
        return monomial_parity(terms.begin()->first);
    }

    // Deepest mode depth max(-n) over all modes; 0 for the vacuum.
    long max_depth() const {
        long d = 0;
        for (const auto& [m, c] : terms)
            for (const auto& x : m) d = std::max(d, -x.n);
        return d;
    }

    std::string text() const {
        std::ostringstream os;
        for (const auto& [m, c] : terms) {
            os << rat_str(c) << " *";
            if (m.empty()) os << " 1";
            for (const auto& x : m)
                os << " " << kind_name(x.kind, gr) << "^" << x.index << "_("
                   << x.n << ")";
            os << "\n";
        }
        return os.str();
    }
};

inline VAState vacuum_state(int N, bool gr) {
    VAState s(N, gr);
    s.terms.emplace(Monomial{}, Rat(1));
    return s;
}

namespace detail {

// Nonzero scalar bracket of an annihilator m moving past a creation mode x
// (same coordinate index required by caller).
inline Rat contraction(const Mode& m, const Mode& x, bool gr) {
    if (gr && (m.kind == Kind::Beta || m.kind == Kind::Gamma)) {
        // [B_r, A_s] = r delta_{r+s,0}, and [A_r, B_s] = r delta_{r+s,0}.
        bool pair = (m.kind == Kind::Beta && x.kind == Kind::Gamma) ||
                    (m.kind == Kind::Gamma && x.kind == Kind::Beta);
        if (pair && m.n + x.n == 0) return Rat(m.n);
        return 0;
    }
    if (m.kind == Kind::Beta && x.kind == Kind::Gamma && m.n + x.n == -1) return 1;
    if (m.kind == Kind::Gamma && x.kind == Kind::Beta && m.n + x.n == -1) return -1;
    if (m.kind == Kind::BF && x.kind == Kind::CF && m.n + x.n == -1) return 1;
    if (m.kind == Kind::CF && x.kind == Kind::BF && m.n + x.n == -1) return 1;
    return 0;
}

}  // namespace detail

// Normal-ordered action of a single mode on a state. Creation modes insert
// at the canonical position with the fermionic crossing sign; annihilators
// contract against each admissible partner (all brackets are scalars, so
// the survivor monomial is the input with one mode deleted).
inline VAState apply_mode(const Mode& m, const VAState& s) {
    VAState out(s.N, s.gr);
    if (m.index < 1 || m.index > s.N)
        throw std::invalid_argument("mode index out of range");
    if (s.gr && m.n == 0 && (m.kind == Kind::Beta || m.kind == Kind::Gamma))
        return out;  // B_0 and A_0 vanish on the whole gr Fock space

    const bool creation = (m.n <= -1);
    const bool mf = is_fermion(m.kind);
    for (const auto& [mono, coef] : s.terms) {
        if (creation) {
            std::size_t pos = 0;
            int cross = 0;
            bool dup = false;
            for (; pos < mono.size() && mono[pos] < m; ++pos)
                if (is_fermion(mono[pos].kind)) cross ^= 1;
            if (mf && pos < mono.size() && mono[pos] == m) dup = true;
            if (dup) continue;  // fermionic nilpotence
            Monomial nm;
            nm.reserve(mono.size() + 1);
            nm.insert(nm.end(), mono.begin(), mono.begin() + pos);
            nm.push_back(m);
            nm.insert(nm.end(), mono.begin() + pos, mono.end());
            out.add_term(nm, (mf && cross) ? -coef : coef);
        } else {
            int cross = 0;
            for (std::size_t j = 0; j < mono.size(); ++j) {
                if (mono[j].index == m.index) {
                    Rat br = detail::contraction(m, mono[j], s.gr);
                    if (br != 0) {
                        Monomial nm;
                        nm.reserve(mono.size() - 1);
                        nm.insert(nm.end(), mono.begin(), mono.begin() + j);
                        nm.insert(nm.end(), mono.begin() + j + 1, mono.end());
                        Rat c = coef * br;
                        out.add_term(nm, (mf && cross) ? -c : c);
                    }
                }
                if (is_fermion(mono[j].kind)) cross ^= 1;
            }
        }
    }
    return out;
}

// Translation operator: T|0> = 0 and [T, x_(n)] = -n x_(n-1), applied
// termwise per mode position and re-canonicalized.
inline VAState translate(const VAState& s) {
    VAState out(s.N, s.gr);
    for (const auto& [mono, coef] : s.terms) {
        for (std::size_t i = 0; i < mono.size(); ++i) {
            VAState part = vacuum_state(s.N, s.gr);
            for (std::size_t j = mono.size(); j-- > 0;) {
                Mode x = mono[j];
                if (j == i) x.n -= 1;
                part = apply_mode(x, part);
            }
            out += part.scale(coef * Rat(-mono[i].n));
        }
    }
    return out;
}

// W_gamma -> Omega_gamma^+ symbol isomorphism: B_(n) -> beta_(n),
// A_(-m) -> m gamma_(-m-1), fermions unchanged.
inline VAState to_chiral(const VAState& s) {
    if (!s.gr) throw std::invalid_argument("to_chiral expects a gr state");
    VAState out(s.N, false);
    for (const auto& [mono, coef] : s.terms) {
        Rat c = coef;
        Monomial nm;
        nm.reserve(mono.size());
        for (const auto& x : mono) {
            Mode y = x;
            if (x.kind == Kind::Gamma) {
                c *= Rat(-x.n);
                y.n = x.n - 1;
            }
            nm.push_back(y);
        }
        // Mode order is preserved: shifting every A depth by one keeps the
        // relative (kind, index, n) order, so no resorting or signs.
        out.add_term(nm, c);
    }
    return out;
}

// Inverse symbol map, defined on states free of gamma_(-1) factors
// (the polynomial directions have no counterpart in W_gamma).
inline VAState gr_project(const VAState& s) {
    if (s.gr) throw std::invalid_argument("gr_project expects a chiral state");
    VAState out(s.N, true);
    for (const auto& [mono, coef] : s.terms) {
        Rat c = coef;
        Monomial nm;
        nm.reserve(mono.size());
        for (const auto& x : mono) {
            Mode y = x;
            if (x.kind == Kind::Gamma) {
                if (x.n == -1)
                    throw std::invalid_argument(
                        "gr projection needs gamma depth >= 2");
                y.n = x.n + 1;
                c /= Rat(-y.n);
            }
            nm.push_back(y);
        }
        out.add_term(nm, c);
    }
    return out;
}

// Convenience builder: apply creation modes right-to-left to the vacuum.
inline VAState build_state(int N, bool gr, const std::vector<Mode>& modes,
                           const Rat& coef = 1) {
    VAState s = vacuum_state(N, gr);
    for (std::size_t j = modes.size(); j-- > 0;) s = apply_mode(modes[j], s);
    return s.scale(coef);
}

}  // namespace chm
