#pragma once
#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "chm/errors.hpp"
#include "chm/forms.hpp"
#include "chm/linalg.hpp"
#include "chm/qyseries.hpp"

namespace chm {

// Appell-Lerch sum R = y^{1/2} sum_n (-1)^n q^{n(n+1)/2} T y^n / (1 - q^n y),
// expanded termwise: the n = 0 slice in closed product form, n != 0 slices
// by geometric expansion of the pole factor.
inline QYSeries lerch_sum(long prec24) {
    QYSeries t = theta_prod(prec24);
    long p = t.prec24;
    QYSeries out = QYSeries::zero(p);
    // n = 0: y^{1/2} T / (1 - y) = -q^{1/8} prod (1-q^k)(1-yq^k)(1-y^{-1}q^k)
    QYSeries n0 = QYSeries::mono(-1, 3, 0, p);
    QYSeries one = QYSeries::one(p);
    for (long k = 1; 24 * k < p; ++k) {
        n0 = n0 * (one - QYSeries::mono(1, 24 * k, 0, p));
        n0 = n0 * (one - QYSeries::mono(1, 24 * k, 2, p));
        n0 = n0 * (one - QYSeries::mono(1, 24 * k, -2, p));
    }
    out = out + n0;
    // n > 0: geometric expansion of 1/(1 - q^n y)
    for (long n = 1; 12 * n * (n + 1) < p; ++n) {
        QYSeries pref = QYSeries::mono((n % 2 != 0) ? Rat(-1) : Rat(1),
                                       12 * n * (n + 1), 2 * n + 1, p);
        QYSeries geo = QYSeries::zero(p);
        for (long j = 0; 12 * n * (n + 1) + 24 * n * j < p; ++j)
            geo = geo + QYSeries::mono(1, 24 * n * j, 2 * j, p);
        out = out + pref * geo * t;
    }
    // n = -m < 0: 1/(1 - q^{-m} y) = -q^m y^{-1} sum_j q^{mj} y^{-j}
    for (long m = 1; 12 * m * (m + 1) < p; ++m) {
        QYSeries pref = QYSeries::mono((m % 2 != 0) ? Rat(1) : Rat(-1),
                                       12 * m * (m - 1) + 24 * m, -2 * m - 1, p);
        QYSeries geo = QYSeries::zero(p);
        for (long j = 0; 12 * m * (m + 1) + 24 * m * j < p; ++j)
            geo = geo + QYSeries::mono(1, 24 * m * j, -2 * j, p);
        out = out + pref * geo * t;
    }
    return out;
}

inline QYSeries k3_elliptic_genus(long prec24) { return phi_0_1(prec24).scale(2); }

struct Decomposition {
    Rat c_half, c_zero;
    std::vector<Rat> massive;  // multiplicities m_1..m_nmax
};

// The three unitary k = 1 characters needed for the decomposition, with both
// sign conventions resolved operationally: sign_eps by ch_zero(y=1) = 1,
// sign_sigma by positivity of the first K3 massive multiplicity.
struct CharacterBasis {
    long prec24 = 0;
    int sign_eps = 0, sign_sigma = 0;
    QYSeries ch_zero, ch_half, massive_core;

    // Massive character n enters the q-expansion at q^n: q^{n-1/8} times the
    // core normalized to start at q^{1/8}.
    QYSeries massive(long n) const { return massive_core.shift(24 * n - 3, 0); }

    Decomposition decompose(const QYSeries& z, long nmax) const {
        std::vector<const QYSeries*> basis{&ch_half, &ch_zero};
        std::vector<QYSeries> shifted;
        shifted.reserve(nmax);
        for (long n = 1; n <= nmax; ++n) shifted.push_back(massive(n));
        for (const auto& s : shifted) basis.push_back(&s);

        long pmin = z.prec24;
        for (auto* s : basis) pmin = std::min(pmin, s->prec24);
        std::set<QYSeries::Key> keys;
        for (auto* s : basis)
            for (const auto& [k, v] : s->co) keys.insert(k);
        for (const auto& [k, v] : z.co) keys.insert(k);

        Mat a;
        Vec b;
        for (const auto& k : keys) {
            if (k.first >= pmin || k.first > 24 * nmax) continue;
            Vec row;
            row.reserve(basis.size());
            for (auto* s : basis) row.push_back(s->coeff(k.first, k.second));
            a.push_back(std::move(row));
            b.push_back(z.coeff(k.first, k.second));
        }
        Vec x = solve_unique(a, b);

        // Residual must vanish on the whole window the basis can represent:
        // the first unmodeled massive character enters at q^{(nmax+1)-1/8}.
        long p = std::min(pmin, 24 * (nmax + 1) - 3);
        QYSeries resid = z.clip(p);
        for (std::size_t i = 0; i < basis.size(); ++i)
            resid = resid - basis[i]->clip(p).scale(x[i]);
        if (!resid.co.empty())
            throw NoSolution("character decomposition residual at q24=" +
                             std::to_string(resid.co.begin()->first.first));

        Decomposition d;
        d.c_half = x[0];
        d.c_zero = x[1];
        d.massive.assign(x.begin() + 2, x.end());
        return d;
    }

    // Sigma series q^{-1/8}(c_half + sum_n m_n q^n) as a one-variable series.
    static QYSeries sigma_series(const Decomposition& d, long prec24) {
        std::map<QYSeries::Key, Rat> co;
        co[{-3, 0}] = d.c_half;
        for (std::size_t n = 1; n <= d.massive.size(); ++n)
            co[{24 * static_cast<long>(n) - 3, 0}] = d.massive[n - 1];
        return QYSeries(std::move(co), prec24);
    }

    static CharacterBasis build(long prec, long n_massive) {
        if (prec < n_massive + 1)
            throw std::invalid_argument("basis precision must exceed massive count");
        long p24 = 24 * prec;
        CharacterBasis cb;
        cb.prec24 = p24;
        QYSeries r = lerch_sum(p24);
        QYSeries e3inv = eta_pow(p24, 3).invert();
        QYSeries ch0 = r * e3inv;
        // eps: ch_zero(y=1) must be identically +1
        for (int eps : {+1, -1}) {
            QYSeries cand = ch0.scale(eps);
            auto sp = cand.specialize_y(1);
            if (sp.size() == 1 && sp.count(0) && sp[0] == 1) {
                cb.sign_eps = eps;
                cb.ch_zero = cand;
                break;
            }
        }
        if (cb.sign_eps == 0)
            throw SignResolutionFailure("neither sign gives ch_zero(y=1) = 1");

        QYSeries t = theta_prod(p24);
        QYSeries core = t * t * e3inv;
        // sigma: massive multiplicities of the K3 genus must come out positive
        QYSeries z = k3_elliptic_genus(p24);
        for (int sigma : {+1, -1}) {
            CharacterBasis cand = cb;
            cand.sign_sigma = sigma;
            cand.massive_core = core.scale(sigma);
            cand.ch_half = cand.massive_core.shift(-3, 0) - cand.ch_zero.scale(2);
            try {
                Decomposition d = cand.decompose(z.clip(cand.prec24), 1);
                if (!d.massive.empty() && d.massive[0] > 0) {
                    cb = cand;
                    break;
                }
            } catch (const NoSolution&) {
            } catch (const NonUnique&) {
            }
        }
        if (cb.sign_sigma == 0)
            throw SignResolutionFailure("neither sign gives positive massive multiplicities");
        return cb;
    }
};

// Independent route to the sigma coefficients, bypassing the dense solve:
// with e = Z(y=1) (a constant for index-1 forms), Z - e*ch_zero factors as
// massive_core * Sigma(q); the y^1 channel of the core rows is triangular
// with leading coefficient -sign_sigma, so the s_k peel off one at a time.
// Returns (s_0, s_1, ..., s_K) with s_0 = c_half and s_n = m_n.
inline std::vector<Rat> extract_sigma(const QYSeries& z, const CharacterBasis& cb) {
    auto sp = z.specialize_y(1);
    Rat e = sp.count(0) ? sp[0] : Rat(0);
    sp.erase(0);
    if (!sp.empty())
        throw NoSolution("y = 1 specialization is not a constant");
    QYSeries work = (z - cb.ch_zero.scale(e)).clip(
        std::min(z.prec24, cb.massive_core.prec24));
    long p = work.prec24;
    std::vector<Rat> out;
    // The y^1 coefficient of massive_core at its lowest row q^{1/8} is the
    // resolved sign itself (core = sigma * q^{1/8}(y - 2 + 1/y)(1 + ...)).
    Rat lead = Rat(cb.sign_sigma);
    for (long n = 0; 24 * n < p - 3; ++n) {
        Rat c = work.coeff(24 * n, 2) / lead;
        out.push_back(c);
        if (c != 0) work = work - cb.massive_core.shift(24 * n - 3, 0).scale(c);
    }
    for (const auto& [k, v] : work.co)
        if (k.first < p - 3)
            throw NoSolution("sigma extraction residual at q24=" + std::to_string(k.first));
    return out;
}

}  // namespace chm
