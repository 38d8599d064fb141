#pragma once
#include <cmath>
#include <complex>
#include <string>

#include "chm/errors.hpp"
#include "chm/rational.hpp"

namespace chm {

// Element of Q(r7) with r7^2 = -7, i.e. a + b*sqrt(-7).
struct Quad {
    Rat a, b;

    Quad() : a(0), b(0) {}
    Quad(Rat a_, Rat b_ = Rat(0)) : a(std::move(a_)), b(std::move(b_)) {}

    bool is_rational() const { return b == 0; }
    Quad conj() const { return Quad(a, -b); }

    Quad operator+(const Quad& o) const { return Quad(a + o.a, b + o.b); }
    Quad operator-(const Quad& o) const { return Quad(a - o.a, b - o.b); }
    Quad operator*(const Quad& o) const {
        return Quad(a * o.a - 7 * b * o.b, a * o.b + b * o.a);
    }
    bool operator==(const Quad& o) const { return a == o.a && b == o.b; }
    bool operator!=(const Quad& o) const { return !(*this == o); }

    std::complex<double> to_complex() const {
        return {rat_double(a), rat_double(b) * std::sqrt(7.0)};
    }

    std::string str() const {
        if (b == 0) return rat_str(a);
        std::string s = rat_str(a);
        if (b > 0)
            s += "+" + rat_str(b) + "*r7";
        else
            s += "-" + rat_str(-b) + "*r7";
        return s;
    }
};

// Accepts "a", "b*r7" (signed), or "a+b*r7" / "a-b*r7" with a, b rationals.
inline Quad parse_quad(const std::string& s) {
    auto star = s.find("*r7");
    if (star == std::string::npos) {
        if (s.find("r7") != std::string::npos)
            throw ParseError("malformed quadratic value: " + s);
        return Quad(parse_rat(s));
    }
    if (star + 3 != s.size())
        throw ParseError("malformed quadratic value: " + s);
    std::string body = s.substr(0, star);
    // The separator sign is the only '+'/'-' past position 0 (rationals carry
    // at most a leading sign).
    std::size_t sep = std::string::npos;
    for (std::size_t i = 1; i < body.size(); ++i)
        if (body[i] == '+' || body[i] == '-') {
            sep = i;
            break;
        }
    if (sep == std::string::npos) return Quad(Rat(0), parse_rat(body));
    Rat a = parse_rat(body.substr(0, sep));
    std::string bs = body.substr(sep + 1);
    Rat b = parse_rat(bs);
    if (body[sep] == '-') b = -b;
    return Quad(a, b);
}

}  // namespace chm
