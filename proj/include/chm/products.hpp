#pragma once
#include <stdexcept>

#include "chm/rational.hpp"
#include "chm/vertex.hpp"

namespace chm {

namespace detail {

inline long tail_weight(const Monomial& m, std::size_t off, bool gr) {
    long w = 0;
    for (std::size_t i = off; i < m.size(); ++i) w += mode_weight(m[i], gr);
    return w;
}

inline int tail_parity(const Monomial& m, std::size_t off) {
    int p = 0;
    for (std::size_t i = off; i < m.size(); ++i)
        if (is_fermion(m[i].kind)) p ^= 1;
    return p;
}

inline long state_max_weight(const VAState& s) {
    long w = 0;
    for (const auto& [m, c] : s.terms) w = std::max(w, monomial_weight(m, s.gr));
    return w;
}

// n-th product of the monomial tail a[off..] against the state c, by the
// iterate (quasi-associativity) formula on the leading mode x_(-k):
//   (x_(-k)u)_(q) c = sum_{j>=0} binom(k+j-1, j) *
//     [ x_(-k-j)(u_(q+j) c) - (-1)^{k+|x||u|} u_(q-k-j)(x_(j) c) ].
// All brackets are scalars, so x modes act directly via apply_mode and only
// u recurses; the j windows close because weights are bounded below by zero
// and annihilators need a contraction partner.
inline VAState product_iterate(const Monomial& a, std::size_t off, long q,
                               const VAState& c) {
    if (off == a.size())
        return q == -1 ? c : VAState(c.N, c.gr);
    VAState out(c.N, c.gr);
    if (c.is_zero()) return out;
    const Mode x = a[off];
    const long k = -x.n;
    const int px = is_fermion(x.kind) ? 1 : 0;
    const int pu = tail_parity(a, off + 1);
    const long wu = tail_weight(a, off + 1, c.gr);
    const long wc = state_max_weight(c);
    const bool neg = ((k + px * pu) % 2 + 2) % 2 == 1;

    for (long j = 0; q + j <= wu + wc - 1; ++j) {
        VAState t = product_iterate(a, off + 1, q + j, c);
        if (t.is_zero()) continue;
        Rat coef(binomial(k + j - 1, j));
        out += apply_mode(Mode{x.kind, x.index, -k - j}, t).scale(coef);
    }
    const long jmax = c.max_depth() + 1;
    for (long j = 0; j <= jmax; ++j) {
        VAState t = apply_mode(Mode{x.kind, x.index, j}, c);
        if (t.is_zero()) continue;
        Rat coef(binomial(k + j - 1, j));
        if (!neg) coef = -coef;
        out += product_iterate(a, off + 1, q - k - j, t).scale(coef);
    }
    return out;
}

}  // namespace detail

inline VAState nth_product(const VAState& a, long n, const VAState& b) {
    if (a.N != b.N || a.gr != b.gr)
        throw std::invalid_argument("nth_product operands live in different algebras");
    VAState out(a.N, a.gr);
    for (const auto& [mono, coef] : a.terms)
        out += detail::product_iterate(mono, 0, n, b).scale(coef);
    return out;
}

namespace detail {

// Independent route: expand Y(a, z) as the normally ordered product
// :A(z) Y(u, z): with A = d^{k-1}x(z)/(k-1)!, whose modes are
// A_(j) = (-1)^{k-1} binom(j, k-1) x_(j-k+1), and take the n-th mode
//   (:AU:)_(n) = sum_{j<=-1} A_(j) U_(n-1-j)
//              + (-1)^{|A||U|} sum_{j>=0} U_(n-1-j) A_(j).
// Different recursion shape and different binomial family than the iterate
// formula; agreement of the two is a genuine cross-check.
inline VAState product_wick(const Monomial& a, std::size_t off, long n,
                            const VAState& c) {
    if (off == a.size())
        return n == -1 ? c : VAState(c.N, c.gr);
    VAState out(c.N, c.gr);
    if (c.is_zero()) return out;
    const Mode x = a[off];
    const long k = -x.n;
    const int px = is_fermion(x.kind) ? 1 : 0;
    const int pu = tail_parity(a, off + 1);
    const long wu = tail_weight(a, off + 1, c.gr);
    const long wc = state_max_weight(c);
    const bool neg = (px * pu) == 1;

    for (long j = -1; j >= n - wu - wc; --j) {
        VAState t = product_wick(a, off + 1, n - 1 - j, c);
        if (t.is_zero()) continue;
        // (-1)^{k-1} binom(j, k-1) = binom(k-j-2, k-1) for j < 0: the sign of
        // the falling factorial cancels the A_(j) prefactor.
        Rat w(binomial(k - j - 2, k - 1));
        out += apply_mode(Mode{x.kind, x.index, j - k + 1}, t).scale(w);
    }
    const long jmax = c.max_depth() + k;
    for (long j = 0; j <= jmax; ++j) {
        Int bin = binomial(j, k - 1);
        if (bin == 0) continue;
        VAState t = apply_mode(Mode{x.kind, x.index, j - k + 1}, c);
        if (t.is_zero()) continue;
        Rat w = Rat(bin);
        if ((k - 1) % 2 == 1) w = -w;  // (-1)^{k-1} prefactor of A_(j)
        if (neg) w = -w;
        out += product_wick(a, off + 1, n - 1 - j, t).scale(w);
    }
    return out;
}

}  // namespace detail

inline VAState oracle_product(const VAState& a, long n, const VAState& b) {
    if (a.N != b.N || a.gr != b.gr)
        throw std::invalid_argument("oracle_product operands live in different algebras");
    VAState out(a.N, a.gr);
    for (const auto& [mono, coef] : a.terms)
        out += detail::product_wick(mono, 0, n, b).scale(coef);
    return out;
}

// Right side of skew-symmetry a_(n)b = sum_{j>=0} (-1)^{n+j+1+|a||b|}
// (1/j!) T^j (b_(n+j) a); requires parity-homogeneous inputs.
inline VAState skew_symmetry_rhs(const VAState& a, long n, const VAState& b) {
    VAState out(a.N, a.gr);
    const int pab = a.parity() * b.parity();
    const long wa = detail::state_max_weight(a), wb = detail::state_max_weight(b);
    Rat fact = 1;
    for (long j = 0; n + j <= wa + wb - 1 + 1; ++j) {
        if (j > 0) fact *= j;
        VAState t = nth_product(b, n + j, a);
        for (long i = 0; i < j; ++i) t = translate(t);
        long sgn = ((n + j + 1 + pab) % 2 + 2) % 2;
        out += t.scale((sgn ? Rat(-1) : Rat(1)) / fact);
    }
    return out;
}

}  // namespace chm
