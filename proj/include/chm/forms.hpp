#pragma once
#include <utility>
#include <vector>

#include "chm/qyseries.hpp"

namespace chm {

// Dedekind eta as the product q^{1/24} prod_{n>=1} (1 - q^n).
inline QYSeries eta(long prec24) {
    QYSeries out = QYSeries::mono(1, 1, 0, prec24 + 1);
    for (long n = 1; 24 * n < prec24; ++n)
        out = out * (QYSeries::one(prec24) - QYSeries::mono(1, 24 * n, 0, prec24));
    return out;
}

// Independent eta via Euler's pentagonal number theorem:
// sum_k (-1)^k q^{(6k-1)^2/24}, exponent 1 + 12k(3k-1) in 1/24 units.
inline QYSeries eta_pentagonal(long prec24) {
    std::map<QYSeries::Key, Rat> co;
    for (long k = 0;; ++k) {
        bool added = false;
        std::vector<long> ks = k ? std::vector<long>{k, -k} : std::vector<long>{0};
        for (long kk : ks) {
            long e = 1 + 12 * kk * (3 * kk - 1);
            if (e < prec24 + 1) {
                co[{e, 0}] = (kk % 2 != 0) ? Rat(-1) : Rat(1);
                added = true;
            }
        }
        if (!added && k > 0) break;
    }
    return QYSeries(std::move(co), prec24 + 1);
}

// T = q^{1/8}(y^{1/2} - y^{-1/2}) prod_{n>=1} (1-q^n)(1-y q^n)(1-y^{-1} q^n).
inline QYSeries theta_prod(long prec24) {
    long p = prec24 + 3;
    QYSeries out = QYSeries::mono(1, 3, 1, p) - QYSeries::mono(1, 3, -1, p);
    QYSeries one = QYSeries::one(p);
    for (long n = 1; 24 * n < prec24; ++n) {
        out = out * (one - QYSeries::mono(1, 24 * n, 0, p));
        out = out * (one - QYSeries::mono(1, 24 * n, 2, p));
        out = out * (one - QYSeries::mono(1, 24 * n, -2, p));
    }
    return out;
}

// T as the signed sum over half-integer characters:
// sum_{n>=0} (-1)^n q^{(n+1/2)^2/2} (y^{n+1/2} - y^{-(n+1/2)}).
inline QYSeries theta_sum(long prec24) {
    std::map<QYSeries::Key, Rat> co;
    for (long n = 0;; ++n) {
        long e = 3 * (2 * n + 1) * (2 * n + 1);
        if (e >= prec24 + 3) break;
        Rat s = (n % 2 != 0) ? Rat(-1) : Rat(1);
        co[{e, 2 * n + 1}] = s;
        co[{e, -(2 * n + 1)}] = -s;
    }
    return QYSeries(std::move(co), prec24 + 3);
}

inline QYSeries theta2(long prec24) {
    std::map<QYSeries::Key, Rat> co;
    for (long n = 0;; ++n) {
        long e = 3 * (2 * n + 1) * (2 * n + 1);
        if (e >= prec24) break;
        co[{e, 2 * n + 1}] = 1;
        co[{e, -(2 * n + 1)}] = 1;
    }
    return QYSeries(std::move(co), prec24);
}

inline QYSeries theta3(long prec24) {
    std::map<QYSeries::Key, Rat> co;
    co[{0, 0}] = 1;
    for (long n = 1; 12 * n * n < prec24; ++n) {
        co[{12 * n * n, 2 * n}] = 1;
        co[{12 * n * n, -2 * n}] = 1;
    }
    return QYSeries(std::move(co), prec24);
}

inline QYSeries theta4(long prec24) {
    std::map<QYSeries::Key, Rat> co;
    co[{0, 0}] = 1;
    for (long n = 1; 12 * n * n < prec24; ++n) {
        Rat s = (n % 2 != 0) ? Rat(-1) : Rat(1);
        co[{12 * n * n, 2 * n}] = s;
        co[{12 * n * n, -2 * n}] = s;
    }
    return QYSeries(std::move(co), prec24);
}

inline QYSeries eta_pow(long prec24, int k) {
    QYSeries e = eta(prec24);
    QYSeries out = QYSeries::one(e.prec24);
    for (int i = 0; i < k; ++i) out = out * e;
    return out;
}

// Weak Jacobi form of weight 0 and index 1:
// 4 sum_{i=2,3,4} (theta_i(z)/theta_i(0))^2.
inline QYSeries phi_0_1(long prec24) {
    QYSeries out = QYSeries::zero(prec24);
    for (auto th : {theta2, theta3, theta4}) {
        QYSeries z = th(prec24);
        std::map<QYSeries::Key, Rat> sp;
        for (const auto& [q24, v] : z.specialize_y(1)) sp[{q24, 0}] = v;
        QYSeries z1(std::move(sp), z.prec24);
        out = out + z * z * (z1 * z1).invert();
    }
    return out.scale(4);
}

// Weak Jacobi form of weight -2 and index 1: T^2 / eta^6.
inline QYSeries phi_m2_1(long prec24) {
    QYSeries t = theta_prod(prec24);
    return t * t * eta_pow(prec24, 6).invert();
}

// prod eta(q^m)^r with a rational prefactor; r may be negative.
inline QYSeries eta_quotient(const std::vector<std::pair<long, int>>& factors,
                             const Rat& prefactor, long prec24) {
    // Inverse factors have negative lowest exponent -m, which erodes product
    // windows; build everything with that much slack and clip at the end.
    long slack = 48;
    for (const auto& [m, r] : factors)
        if (r < 0) slack += 24 * m * (-r);
    long work = prec24 + slack;
    QYSeries out = QYSeries::one(work);
    for (const auto& [m, r] : factors) {
        QYSeries em = eta(work / m + 2).scale_q(m);
        QYSeries f = (r >= 0) ? em : em.invert();
        for (int i = 0; i < (r >= 0 ? r : -r); ++i) out = out * f;
    }
    return out.scale(prefactor).clip(prec24);
}

namespace detail {
inline long sigma1(long k) {
    long s = 0;
    for (long d = 1; d <= k; ++d)
        if (k % d == 0) s += d;
    return s;
}
}  // namespace detail

// Weight-2 form on Gamma_0(N):
// lambda_N = N(N-1)/24 + N sum_k sigma_1(k) (q^k - N q^{Nk}).
inline QYSeries hecke_lambda(long N, long prec24) {
    std::map<QYSeries::Key, Rat> co;
    co[{0, 0}] = Rat(N * (N - 1), 24);
    for (long k = 1; 24 * k < prec24; ++k) {
        co[{24 * k, 0}] += Rat(N * detail::sigma1(k));
        if (24 * N * k < prec24) co[{24 * N * k, 0}] -= Rat(N * N * detail::sigma1(k));
    }
    return QYSeries(std::move(co), prec24);
}

// Same form via the eta-quotient logarithmic derivative,
// N q d/dq log(eta(N tau)/eta(tau)), expanded as a double sum.
inline QYSeries hecke_lambda_logderiv(long N, long prec24) {
    std::map<QYSeries::Key, Rat> co;
    co[{0, 0}] = Rat(N * (N - 1), 24);
    for (long n = 1; 24 * n < prec24; ++n) {
        for (long j = 1; 24 * n * j < prec24; ++j) co[{24 * n * j, 0}] += Rat(N * n);
        for (long j = 1; 24 * N * n * j < prec24; ++j) co[{24 * N * n * j, 0}] -= Rat(N * N * n);
    }
    return QYSeries(std::move(co), prec24);
}

}  // namespace chm
