#pragma once
#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "chm/errors.hpp"
#include "chm/quadratic.hpp"
#include "chm/rational.hpp"

namespace chm {

struct ConjClass {
    std::string name;
    long order = 0;
    Int centralizer;
    bool geometric = false;
};

struct Irrep {
    std::string name;
    Int dim;
};

namespace detail {
inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}
}  // namespace detail

// Exact character table over Q(sqrt(-7)) with floating-point orthogonality
// validation. Entries off the order-7 columns that are irrational in other
// fields are shipped as high-precision rational surrogates of the r7
// coefficient; every exact computation in this project stays on columns
// where the pair arithmetic is literally exact.
class CharacterTable {
public:
    std::vector<ConjClass> classes;
    std::vector<Irrep> irreps;
    std::vector<std::vector<Quad>> values;  // values[irrep][class]
    std::vector<Rat> perm24;                // e(g) = 1 + chi_23(g), per class

    Int group_order() const { return classes.at(0).centralizer; }

    long class_index(const std::string& name) const {
        for (std::size_t c = 0; c < classes.size(); ++c)
            if (classes[c].name == name) return static_cast<long>(c);
        throw IntegrityError("unknown conjugacy class", name);
    }

    long irrep_index(const std::string& name) const {
        for (std::size_t i = 0; i < irreps.size(); ++i)
            if (irreps[i].name == name) return static_cast<long>(i);
        throw IntegrityError("unknown irrep", name);
    }

    std::vector<std::string> geometric_classes() const {
        std::vector<std::string> out;
        for (const auto& c : classes)
            if (c.geometric) out.push_back(c.name);
        return out;
    }

    Rat e_value(const std::string& cls) const { return perm24.at(class_index(cls)); }

    void validate() const {
        if (classes.empty() || irreps.empty())
            throw IntegrityError("empty table", "structure");
        const Int g = group_order();
        if (classes[0].order != 1)
            throw IntegrityError("first class is not the identity", classes[0].name);

        // Class names encode element orders (ATLAS convention): leading
        // digits of "12B" must equal the order field.
        for (const auto& c : classes) {
            std::size_t i = 0;
            while (i < c.name.size() && std::isdigit(static_cast<unsigned char>(c.name[i]))) ++i;
            if (i == 0 || std::stol(c.name.substr(0, i)) != c.order)
                throw IntegrityError("class order disagrees with its name", c.name);
            if (c.centralizer <= 0 || g % c.centralizer != 0)
                throw IntegrityError("centralizer does not divide the group order", c.name);
        }

        // Class equation: sum of class sizes |G|/|C(g)| recovers |G|.
        Int total = 0;
        for (const auto& c : classes) total += g / c.centralizer;
        if (total != g) throw IntegrityError("class equation fails", int_str(total));

        // Exact structure: 1A column equals the dimensions, dims square-sum
        // to the group order.
        Int dimsq = 0;
        for (std::size_t i = 0; i < irreps.size(); ++i) {
            const Quad& v = values[i][0];
            if (!v.is_rational() || v.a != Rat(irreps[i].dim))
                throw IntegrityError("identity column disagrees with dimension",
                                     irreps[i].name);
            dimsq += irreps[i].dim * irreps[i].dim;
        }
        if (dimsq != g)
            throw IntegrityError("dimension square sum disagrees with group order",
                                 int_str(dimsq));

        const std::set<std::string> want{"1A", "2A", "3A", "4B", "5A",
                                         "6A", "7A", "7B", "8A"};
        std::set<std::string> got;
        for (const auto& c : classes)
            if (c.geometric) got.insert(c.name);
        if (got != want)
            throw IntegrityError("geometric class set is wrong",
                                 std::to_string(got.size()) + " flagged");

        // e(g) sanity: permutation character values are rational, e(1A) = 24.
        if (perm24.size() != classes.size() || perm24[0] != 24)
            throw IntegrityError("permutation character misses e(1A) = 24", "perm24");

        // Floating orthogonality, weights 1/|C(g)| (= |class|/|G|).
        const double tol = 1e-6;
        std::vector<double> w;
        w.reserve(classes.size());
        for (const auto& c : classes)
            w.push_back(1.0 / c.centralizer.convert_to<double>());
        std::vector<std::vector<std::complex<double>>> x(irreps.size());
        for (std::size_t i = 0; i < irreps.size(); ++i)
            for (const auto& v : values[i]) x[i].push_back(v.to_complex());

        for (std::size_t i = 0; i < irreps.size(); ++i)
            for (std::size_t j = i; j < irreps.size(); ++j) {
                std::complex<double> s = 0;
                for (std::size_t c = 0; c < classes.size(); ++c)
                    s += w[c] * x[i][c] * std::conj(x[j][c]);
                double want_d = (i == j) ? 1.0 : 0.0;
                if (std::abs(s - want_d) > tol)
                    throw IntegrityError("row orthogonality fails",
                                         irreps[i].name + "," + irreps[j].name);
            }
        for (std::size_t c = 0; c < classes.size(); ++c)
            for (std::size_t d = c; d < classes.size(); ++d) {
                std::complex<double> s = 0;
                for (std::size_t i = 0; i < irreps.size(); ++i)
                    s += x[i][c] * std::conj(x[i][d]);
                double want_d = (c == d) ? 1.0 / w[c] : 0.0;
                if (std::abs(s - want_d) * w[c] > tol)
                    throw IntegrityError("column orthogonality fails",
                                         classes[c].name + "," + classes[d].name);
            }
    }
};

inline CharacterTable parse_character_table(std::istream& in) {
    CharacterTable t;
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty character table file");
    if (detail::split_csv(line) !=
        std::vector<std::string>{"class", "order", "centralizer", "geometric"})
        throw ParseError("bad character table header: " + line);

    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) rows.push_back(line);
    }
    // Class rows have 4 fields and a numeric second field; irrep rows follow.
    std::size_t r = 0;
    for (; r < rows.size(); ++r) {
        auto f = detail::split_csv(rows[r]);
        if (f.size() != 4) break;
        ConjClass c;
        c.name = f[0];
        try {
            c.order = std::stol(f[1]);
            c.centralizer = Int(f[2]);
        } catch (const std::exception&) {
            throw ParseError("bad class row: " + rows[r]);
        }
        if (f[3] != "0" && f[3] != "1")
            throw ParseError("bad geometric flag in class row: " + rows[r]);
        c.geometric = (f[3] == "1");
        t.classes.push_back(std::move(c));
    }
    const std::size_t ncls = t.classes.size();
    if (ncls == 0) throw ParseError("no class rows");
    for (; r < rows.size(); ++r) {
        auto f = detail::split_csv(rows[r]);
        if (f.size() != ncls + 2)
            throw ParseError("bad irrep row width: " + rows[r]);
        Irrep ir;
        ir.name = f[0];
        try {
            ir.dim = Int(f[1]);
        } catch (const std::exception&) {
            throw ParseError("bad irrep dimension: " + rows[r]);
        }
        std::vector<Quad> vals;
        vals.reserve(ncls);
        for (std::size_t c = 0; c < ncls; ++c) vals.push_back(parse_quad(f[2 + c]));
        t.irreps.push_back(std::move(ir));
        t.values.push_back(std::move(vals));
    }
    if (t.irreps.empty()) throw ParseError("no irrep rows");

    // Permutation character on 24 points: 1 + the dimension-23 irrep.
    long i23 = -1;
    for (std::size_t i = 0; i < t.irreps.size(); ++i)
        if (t.irreps[i].dim == 23) i23 = static_cast<long>(i);
    if (i23 < 0)
        throw IntegrityError("no 23-dimensional irrep for the permutation character",
                             "perm24");
    for (std::size_t c = 0; c < ncls; ++c) {
        const Quad& v = t.values[i23][c];
        if (!v.is_rational())
            throw IntegrityError("23-dimensional character is not rational",
                                 t.classes[c].name);
        t.perm24.push_back(v.a + 1);
    }
    return t;
}

inline CharacterTable load_character_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open character table file: " + path);
    CharacterTable t = parse_character_table(in);
    t.validate();
    return t;
}

}  // namespace chm
