#pragma once
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "chm/products.hpp"
#include "chm/vertex.hpp"

namespace chm {

// Filtration statistic of a chiral monomial: v - s with v the number of
// gamma modes of depth >= 2 (gamma_(-1) polynomial factors do not count)
// and s the number of beta modes.
inline long monomial_filtration(const Monomial& m) {
    long v = 0, s = 0;
    for (const auto& x : m) {
        if (x.kind == Kind::Gamma && x.n <= -2) ++v;
        if (x.kind == Kind::Beta) ++s;
    }
    return v - s;
}

inline long filtration_degree(const VAState& s) {
    if (s.gr) throw std::invalid_argument("filtration is defined on the chiral algebra");
    if (s.is_zero()) throw std::invalid_argument("filtration degree of the zero state");
    bool first = true;
    long deg = 0;
    for (const auto& [m, c] : s.terms) {
        long d = monomial_filtration(m);
        if (first || d < deg) deg = d;
        first = false;
    }
    return deg;
}

struct FiltrationReport {
    long pairs = 0;
    long product_checks = 0;
    long polynomial_checks = 0;
    long bound_checks = 0;
    long violations = 0;
    std::vector<std::string> witnesses;
    bool pass() const { return violations == 0; }
};

namespace detail {

inline VAState random_monomial_state(std::mt19937_64& rng, int N, long max_weight) {
    std::uniform_int_distribution<int> nmodes(0, 4), kind4(0, 3), idx(1, N),
        depth(1, 3);
    for (;;) {
        std::vector<Mode> modes;
        int k = nmodes(rng);
        for (int i = 0; i < k; ++i)
            modes.push_back(Mode{static_cast<Kind>(kind4(rng)), idx(rng),
                                 -static_cast<long>(depth(rng))});
        VAState s = build_state(N, false, modes);
        if (s.is_zero()) continue;  // fermionic repeat
        if (detail::state_max_weight(s) > max_weight) continue;
        return s;
    }
}

}  // namespace detail

// Randomized check of the three filtration laws on monomial pairs:
//   deg(a_(n)b) >= deg a + deg b for every n;
//   deg(f_(n)A) >= deg A + 1 for n != -1 when f is polynomial (gamma_(-1)
//   factors only);
//   |v - s| <= k on every monomial the products generate.
inline FiltrationReport check_filtration(long samples, unsigned long seed) {
    FiltrationReport rep;
    std::mt19937_64 rng(seed);
    const int N = 2;
    std::uniform_int_distribution<int> nfac(1, 3), idx(1, N);

    auto note_bounds = [&](const VAState& s) {
        for (const auto& [m, c] : s.terms) {
            ++rep.bound_checks;
            long k = monomial_weight(m, false);
            long d = monomial_filtration(m);
            if (d > k || d < -k) {
                ++rep.violations;
                rep.witnesses.push_back("weight bound: |" + std::to_string(d) +
                                        "| > " + std::to_string(k));
            }
        }
    };

    for (long i = 0; i < samples; ++i) {
        VAState a = detail::random_monomial_state(rng, N, 5);
        VAState b = detail::random_monomial_state(rng, N, 5);
        ++rep.pairs;
        note_bounds(a);
        note_bounds(b);
        long da = filtration_degree(a), db = filtration_degree(b);
        long wa = detail::state_max_weight(a), wb = detail::state_max_weight(b);
        for (long n = -2; n <= wa + wb; ++n) {
            VAState p = nth_product(a, n, b);
            if (p.is_zero()) continue;
            ++rep.product_checks;
            note_bounds(p);
            if (filtration_degree(p) < da + db) {
                ++rep.violations;
                std::ostringstream os;
                os << "deg(a_(" << n << ")b) = " << filtration_degree(p) << " < "
                   << da + db << " with a = " << a.text() << "b = " << b.text();
                rep.witnesses.push_back(os.str());
            }
        }

        // Polynomial factor: a product of gamma_(-1) modes (degree 0).
        std::vector<Mode> fm;
        int nf = nfac(rng);
        for (int j = 0; j < nf; ++j) fm.push_back(Mode{Kind::Gamma, idx(rng), -1});
        VAState f = build_state(N, false, fm);
        for (long n = -3; n <= wb; ++n) {
            if (n == -1) continue;
            VAState p = nth_product(f, n, b);
            if (p.is_zero()) continue;
            ++rep.polynomial_checks;
            note_bounds(p);
            if (filtration_degree(p) < db + 1) {
                ++rep.violations;
                std::ostringstream os;
                os << "deg(f_(" << n << ")A) = " << filtration_degree(p) << " < "
                   << db + 1 << " with f = " << f.text() << "A = " << b.text();
                rep.witnesses.push_back(os.str());
            }
        }
    }
    return rep;
}

}  // namespace chm
