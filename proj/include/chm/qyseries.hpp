#pragma once
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chm/errors.hpp"
#include "chm/rational.hpp"

namespace chm {

// Exact truncated two-variable Laurent series. q-exponents are stored in
// units of 1/24, y-exponents in units of 1/2, coefficients are exact
// rationals. A series is trusted exactly for q-exponents < prec24; every
// operation propagates the largest window the inputs justify.
//
// Invariants: no zero coefficients stored; every stored q-exponent < prec24;
// finitely many y terms per q power (guaranteed by construction).
class QYSeries {
public:
    using Key = std::pair<long, long>;  // (q24, y2)

    std::map<Key, Rat> co;
    long prec24 = 0;

    QYSeries() = default;
    QYSeries(std::map<Key, Rat> terms, long prec) : prec24(prec) {
        for (auto& [k, v] : terms)
            if (v != 0 && k.first < prec24) co.emplace(k, std::move(v));
    }

    static QYSeries zero(long prec24) { return QYSeries({}, prec24); }
    static QYSeries mono(const Rat& c, long q24, long y2, long prec24) {
        return QYSeries({{{q24, y2}, c}}, prec24);
    }
    static QYSeries one(long prec24) { return mono(1, 0, 0, prec24); }

    bool is_zero() const { return co.empty(); }

    // Lowest stored q-exponent; meaningful only when nonzero.
    bool has_terms() const { return !co.empty(); }
    long low_q() const { return co.begin()->first.first; }

    QYSeries operator+(const QYSeries& o) const {
        long p = std::min(prec24, o.prec24);
        std::map<Key, Rat> out;
        auto acc = [&](const std::map<Key, Rat>& src) {
            for (const auto& [k, v] : src)
                if (k.first < p) out[k] += v;
        };
        acc(co);
        acc(o.co);
        return QYSeries(std::move(out), p);
    }

    QYSeries operator-() const {
        std::map<Key, Rat> out;
        for (const auto& [k, v] : co) out.emplace(k, -v);
        return QYSeries(std::move(out), prec24);
    }

    QYSeries operator-(const QYSeries& o) const { return *this + (-o); }

    QYSeries scale(const Rat& c) const {
        if (c == 0) return zero(prec24);
        std::map<Key, Rat> out;
        for (const auto& [k, v] : co) out.emplace(k, v * c);
        return QYSeries(std::move(out), prec24);
    }

    // Product window: min of each factor's window shifted by the other's
    // lowest exponent (a term of q-order l multiplied into a series trusted
    // below P yields trust below P + l).
    QYSeries operator*(const QYSeries& o) const {
        if (co.empty() || o.co.empty())
            return zero(std::min(prec24, o.prec24));
        long la = low_q(), lb = o.low_q();
        long p = std::min(prec24 + lb, o.prec24 + la);
        std::map<Key, Rat> out;
        for (const auto& [ka, va] : co)
            for (const auto& [kb, vb] : o.co) {
                long q = ka.first + kb.first;
                if (q < p) out[{q, ka.second + kb.second}] += va * vb;
            }
        return QYSeries(std::move(out), p);
    }

    QYSeries shift(long q24, long y2) const {
        std::map<Key, Rat> out;
        for (const auto& [k, v] : co)
            out.emplace(Key{k.first + q24, k.second + y2}, v);
        return QYSeries(std::move(out), prec24 + q24);
    }

    QYSeries clip(long p) const {
        std::map<Key, Rat> out;
        for (const auto& [k, v] : co)
            if (k.first < p) out.emplace(k, v);
        return QYSeries(std::move(out), std::min(p, prec24));
    }

    // Multiplicative inverse. Requires the lowest q-slice to be a single
    // monomial; the result is trusted below prec24 - 2*low_q.
    QYSeries invert() const {
        if (co.empty()) throw NotInvertible("cannot invert zero series");
        long lq = low_q();
        auto it = co.begin();
        const Key lead_key = it->first;
        const Rat lead_c = it->second;
        ++it;
        if (it != co.end() && it->first.first == lq)
            throw NotInvertible("lowest q-part is not a single monomial");
        long p = prec24 - 2 * lq;
        // The normalized series 1 + rest is trusted below prec24 - lq; the
        // final multiplication by the inverse lead costs the second lq.
        long pn = prec24 - lq;
        QYSeries lead_inv = mono(Rat(1) / lead_c, -lead_key.first, -lead_key.second, p);
        QYSeries rest = (*this - mono(lead_c, lead_key.first, lead_key.second, prec24)) * lead_inv;
        // Neumann series in `rest` (strictly positive q-order). Each term is
        // clipped to the target window: the product rule would otherwise keep
        // widening the trusted range and the loop would never drain.
        QYSeries out = one(pn);
        QYSeries term = one(pn);
        while (true) {
            term = (term * rest).scale(-1).clip(pn);
            // An exhausted term is a zero series with a narrower bookkeeping
            // window; adding it would shrink the result's window for nothing.
            if (term.co.empty()) break;
            out = out + term;
        }
        return out * lead_inv;
    }

    // q -> q^m substitution.
    QYSeries scale_q(long m) const {
        std::map<Key, Rat> out;
        for (const auto& [k, v] : co) out.emplace(Key{k.first * m, k.second}, v);
        return QYSeries(std::move(out), prec24 * m);
    }

    // y -> 1 or y -> -1; the latter demands integer y-exponents.
    // Returns q24 -> coefficient (zeros dropped).
    std::map<long, Rat> specialize_y(int y) const {
        std::map<long, Rat> out;
        for (const auto& [k, v] : co) {
            Rat s = 1;
            if (y == -1) {
                if (k.second % 2 != 0)
                    throw HalfIntegerExponent("y = -1 on half-integer y-exponent");
                if (((k.second / 2) % 2 + 2) % 2 == 1) s = -1;
            }
            out[k.first] += v * s;
        }
        for (auto it = out.begin(); it != out.end();)
            it = (it->second == 0) ? out.erase(it) : std::next(it);
        return out;
    }

    // y2 -> coefficient at a fixed q-exponent.
    std::map<long, Rat> q_coeff(long q24) const {
        std::map<long, Rat> out;
        for (const auto& [k, v] : co)
            if (k.first == q24) out[k.second] = v;
        return out;
    }

    Rat coeff(long q24, long y2) const {
        auto it = co.find({q24, y2});
        return it == co.end() ? Rat(0) : it->second;
    }

    // One line per term, "q_num/24 y_num/2 coeff", sorted lexicographically
    // by (q, y) exponent (the map order).
    std::string text() const {
        std::ostringstream os;
        for (const auto& [k, v] : co)
            os << k.first << "/24 " << k.second << "/2 " << rat_str(v) << "\n";
        return os.str();
    }
};

}  // namespace chm
