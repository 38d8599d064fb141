#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "chm/qyseries.hpp"

using chm::QYSeries;
using chm::Rat;

namespace {

// Equality on the common trusted window.
bool agree(const QYSeries& a, const QYSeries& b) {
    long p = std::min(a.prec24, b.prec24);
    return a.clip(p).co == b.clip(p).co;
}

void check_invariants(const QYSeries& s) {
    for (const auto& [k, v] : s.co) {
        REQUIRE(v != 0);
        REQUIRE(k.first < s.prec24);
    }
}

QYSeries random_series(std::mt19937_64& rng, long prec) {
    std::uniform_int_distribution<int> nterms(0, 6), num(-5, 5), den(1, 3);
    std::uniform_int_distribution<long> qexp(0, prec - 1), yexp(-4, 4);
    std::map<QYSeries::Key, Rat> terms;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i)
        terms[{qexp(rng), yexp(rng)}] = Rat(num(rng), den(rng));
    return QYSeries(std::move(terms), prec);
}

}  // namespace

TEST_CASE("constructor drops zeros and out-of-window terms") {
    QYSeries s({{{0, 0}, Rat(1)}, {{3, 1}, Rat(0)}, {{30, 0}, Rat(7)}}, 24);
    REQUIRE(s.co.size() == 1);
    REQUIRE(s.coeff(0, 0) == 1);
    REQUIRE(s.coeff(3, 1) == 0);
    REQUIRE(s.coeff(30, 0) == 0);
    check_invariants(s);
}

TEST_CASE("mono, one, zero") {
    auto m = QYSeries::mono(Rat(3, 2), 5, -1, 48);
    REQUIRE(m.coeff(5, -1) == Rat(3, 2));
    REQUIRE(m.prec24 == 48);
    REQUIRE(QYSeries::one(10).coeff(0, 0) == 1);
    REQUIRE(QYSeries::zero(10).is_zero());
    REQUIRE(QYSeries::zero(10).prec24 == 10);
}

TEST_CASE("ring laws on seeded random series") {
    std::mt19937_64 rng(20260815);
    for (int iter = 0; iter < 250; ++iter) {
        auto a = random_series(rng, 21);
        auto b = random_series(rng, 21);
        auto c = random_series(rng, 21);
        REQUIRE(agree(a + b, b + a));
        REQUIRE(agree((a + b) + c, a + (b + c)));
        REQUIRE(agree(a * b, b * a));
        REQUIRE(agree((a * b) * c, a * (b * c)));
        REQUIRE(agree(a * (b + c), a * b + a * c));
        REQUIRE(agree(a + QYSeries::zero(21), a));
        REQUIRE(agree(a * QYSeries::one(21), a));
        REQUIRE((a - a).is_zero());
        check_invariants(a * b);
        check_invariants(a + b);
    }
}

TEST_CASE("product window uses the partner's lowest exponent") {
    // q^3 * (series trusted below 10) is trusted below 13.
    auto a = QYSeries::mono(1, 3, 0, 50);
    auto b = QYSeries::mono(1, 0, 0, 10) + QYSeries::mono(2, 9, 0, 10);
    auto p = a * b;
    REQUIRE(p.prec24 == 13);
    REQUIRE(p.coeff(3, 0) == 1);
    REQUIRE(p.coeff(12, 0) == 2);
}

TEST_CASE("shift moves exponents and the window") {
    auto s = QYSeries::mono(5, 2, 1, 10).shift(-3, 2);
    REQUIRE(s.coeff(-1, 3) == 5);
    REQUIRE(s.prec24 == 7);
}

TEST_CASE("clip truncates both terms and window") {
    auto s = QYSeries::mono(1, 0, 0, 20) + QYSeries::mono(1, 15, 0, 20);
    auto c = s.clip(10);
    REQUIRE(c.prec24 == 10);
    REQUIRE(c.co.size() == 1);
    REQUIRE(s.clip(30).prec24 == 20);
}

TEST_CASE("scale and negation") {
    auto s = QYSeries::mono(2, 1, 1, 10);
    REQUIRE(s.scale(Rat(1, 2)).coeff(1, 1) == 1);
    REQUIRE(s.scale(0).is_zero());
    REQUIRE((-s).coeff(1, 1) == -2);
}

TEST_CASE("scale_q substitutes q -> q^m") {
    auto s = QYSeries::mono(1, 2, 1, 10).scale_q(3);
    REQUIRE(s.coeff(6, 1) == 1);
    REQUIRE(s.prec24 == 30);
}

TEST_CASE("invert round-trips on random invertible series") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 100; ++iter) {
        std::uniform_int_distribution<long> lead_q(0, 4), yexp(-2, 2);
        std::uniform_int_distribution<int> num(-3, 3), den(1, 2), sgn(0, 1);
        long lq = lead_q(rng);
        Rat lc = Rat(num(rng) * 2 + 1, den(rng)) * (sgn(rng) ? 1 : -1);
        auto f = QYSeries::mono(lc, lq, yexp(rng), 30);
        std::uniform_int_distribution<int> nt(0, 5);
        int n = nt(rng);
        for (int i = 0; i < n; ++i) {
            std::uniform_int_distribution<long> tq(lq + 1, 29);
            f = f + QYSeries::mono(Rat(num(rng), den(rng)), tq(rng), yexp(rng), 30);
        }
        auto g = f.invert();
        REQUIRE(g.prec24 == 30 - 2 * lq);
        auto prod = f * g;
        REQUIRE(agree(prod, QYSeries::one(prod.prec24)));
        check_invariants(g);
    }
}

TEST_CASE("invert handles a pure monomial and a Laurent lead") {
    auto m = QYSeries::mono(Rat(3), -2, 4, 20).invert();
    REQUIRE(m.coeff(2, -4) == Rat(1, 3));
    REQUIRE(m.prec24 == 24);
}

TEST_CASE("invert rejects bad leads") {
    REQUIRE_THROWS_AS(QYSeries::zero(10).invert(), chm::NotInvertible);
    auto two_lead = QYSeries::mono(1, 0, 0, 10) + QYSeries::mono(1, 0, 2, 10);
    REQUIRE_THROWS_AS(two_lead.invert(), chm::NotInvertible);
}

TEST_CASE("specialize_y sums channels") {
    auto s = QYSeries::mono(1, 0, 2, 10) + QYSeries::mono(4, 0, -2, 10) +
             QYSeries::mono(2, 5, 1, 10);
    auto at1 = s.specialize_y(1);
    REQUIRE(at1.at(0) == 5);
    REQUIRE(at1.at(5) == 2);
    auto sm = QYSeries::mono(1, 0, 2, 10) + QYSeries::mono(-1, 0, -2, 10);
    REQUIRE(sm.specialize_y(1).empty());  // zeros erased
}

TEST_CASE("specialize_y(-1) signs and half-integer rejection") {
    // y^1 -> -1, y^{-1} -> -1, y^2 -> +1, y^0 -> +1  (y2 units: 2, -2, 4, 0)
    auto s = QYSeries::mono(1, 0, 2, 10) + QYSeries::mono(1, 1, -2, 10) +
             QYSeries::mono(1, 2, 4, 10) + QYSeries::mono(1, 3, 0, 10);
    auto r = s.specialize_y(-1);
    REQUIRE(r.at(0) == -1);
    REQUIRE(r.at(1) == -1);
    REQUIRE(r.at(2) == 1);
    REQUIRE(r.at(3) == 1);
    auto bad = QYSeries::mono(1, 0, 1, 10);
    REQUIRE_THROWS_AS(bad.specialize_y(-1), chm::HalfIntegerExponent);
}

TEST_CASE("q_coeff extracts one q-slice") {
    auto s = QYSeries::mono(1, 7, 2, 10) + QYSeries::mono(3, 7, -2, 10) +
             QYSeries::mono(9, 8, 0, 10);
    auto row = s.q_coeff(7);
    REQUIRE(row.size() == 2);
    REQUIRE(row.at(2) == 1);
    REQUIRE(row.at(-2) == 3);
    REQUIRE(s.q_coeff(6).empty());
}

TEST_CASE("text is lexicographically sorted and exact") {
    auto s = QYSeries::mono(Rat(1, 3), 1, -1, 10) + QYSeries::mono(-2, 0, 2, 10);
    REQUIRE(s.text() == "0/24 2/2 -2\n1/24 -1/2 1/3\n");
}

TEST_CASE("addition window is the min of the operands") {
    auto a = QYSeries::mono(1, 0, 0, 5);
    auto b = QYSeries::mono(1, 7, 0, 20);
    auto s = a + b;
    REQUIRE(s.prec24 == 5);
    REQUIRE(s.coeff(7, 0) == 0);  // outside the trusted window
}
