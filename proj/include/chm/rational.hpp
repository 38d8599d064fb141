#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <string>

#include "chm/errors.hpp"

namespace chm {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// "num" or "num/den", canonical (reduced, den > 0).
inline std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

inline std::string int_str(const Int& n) {
    std::ostringstream os;
    os << n;
    return os.str();
}

// Accepts "a" or "a/b" with optional leading sign; anything else is a ParseError.
inline Rat parse_rat(const std::string& s) {
    auto bad = [&] { throw ParseError("bad rational: '" + s + "'"); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    auto check_int = [&](const std::string& t) {
        if (t.empty()) bad();
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) bad();
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') bad();
    };
    try {
        if (slash == std::string::npos) {
            check_int(s);
            return Rat(Int(s));
        }
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        check_int(num);
        check_int(den);
        Int d(den);
        if (d == 0) bad();
        return Rat(Int(num), d);
    } catch (const std::exception&) {
        throw ParseError("bad rational: '" + s + "'");
    }
}

// n choose k for n >= 0; zero when k < 0 or k > n.
inline Int binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int out = 1;
    for (long j = 0; j < k; ++j) {
        out *= (n - j);
        out /= (j + 1);
    }
    return out;
}

inline double rat_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace chm
