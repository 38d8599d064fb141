#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <sstream>

#include "chm/character_table.hpp"

using namespace chm;

namespace {

std::string data_dir() {
    const char* env = std::getenv("CHM_DATA_DIR");
    return env ? env : "./data";
}

const CharacterTable& table() {
    static CharacterTable t =
        load_character_table(data_dir() + "/m24_character_table.txt");
    return t;
}

}  // namespace

TEST_CASE("quadratic field arithmetic") {
    Quad a(1, 1), b(1, -1);
    REQUIRE((a * b) == Quad(8));           // (1+r7)(1-r7) = 1+7
    REQUIRE((a + b) == Quad(2));
    REQUIRE(a.conj() == b);
    REQUIRE((a * a) == Quad(-6, 2));
    REQUIRE(Quad(Rat(3)).is_rational());
    REQUIRE_FALSE(a.is_rational());
    auto z = a.to_complex();
    REQUIRE(z.real() == 1.0);
    REQUIRE(z.imag() == Catch::Approx(std::sqrt(7.0)));
}

TEST_CASE("quadratic parsing round-trips") {
    REQUIRE(parse_quad("3") == Quad(3));
    REQUIRE(parse_quad("-1/2") == Quad(Rat(-1, 2)));
    REQUIRE(parse_quad("2*r7") == Quad(0, 2));
    REQUIRE(parse_quad("-2*r7") == Quad(0, -2));
    REQUIRE(parse_quad("-1+2*r7") == Quad(-1, 2));
    REQUIRE(parse_quad("1/2-3/4*r7") == Quad(Rat(1, 2), Rat(-3, 4)));
    REQUIRE(parse_quad(parse_quad("-1+2*r7").str()) == Quad(-1, 2));
    REQUIRE_THROWS_AS(parse_quad("r7"), ParseError);
    REQUIRE_THROWS_AS(parse_quad("1+r7"), ParseError);
    REQUIRE_THROWS_AS(parse_quad("2*r7x"), ParseError);
    REQUIRE_THROWS_AS(parse_quad(""), ParseError);
}

TEST_CASE("shipped table loads and validates") {
    const auto& t = table();
    REQUIRE(t.classes.size() == 26);
    REQUIRE(t.irreps.size() == 26);
    REQUIRE(t.group_order() == 244823040);
    REQUIRE(t.classes[0].name == "1A");
    REQUIRE(t.irreps[0].dim == 1);
}

TEST_CASE("geometric classes and their Euler numbers") {
    const auto& t = table();
    const std::vector<std::string> want{"1A", "2A", "3A", "4B", "5A",
                                        "6A", "7A", "7B", "8A"};
    REQUIRE(t.geometric_classes() == want);
    const long e[] = {24, 8, 6, 4, 4, 2, 3, 3, 2};
    for (std::size_t i = 0; i < want.size(); ++i)
        REQUIRE(t.e_value(want[i]) == e[i]);
}

TEST_CASE("index lookups reject unknown names") {
    const auto& t = table();
    REQUIRE(t.class_index("2A") == 1);
    REQUIRE_THROWS_AS(t.class_index("9Z"), IntegrityError);
    REQUIRE_THROWS_AS(t.irrep_index("nope"), IntegrityError);
}

TEST_CASE("every single value perturbation is detected") {
    for (std::size_t i = 0; i < table().irreps.size(); ++i)
        for (std::size_t c = 0; c < table().classes.size(); ++c) {
            CharacterTable t = table();
            t.values[i][c].a += 1;
            REQUIRE_THROWS_AS(t.validate(), IntegrityError);
            CharacterTable t2 = table();
            t2.values[i][c].b += 1;
            REQUIRE_THROWS_AS(t2.validate(), IntegrityError);
        }
}

TEST_CASE("structural mutations are detected") {
    for (std::size_t c = 0; c < table().classes.size(); ++c) {
        CharacterTable t = table();
        t.classes[c].order += 1;
        REQUIRE_THROWS_AS(t.validate(), IntegrityError);
        CharacterTable t2 = table();
        t2.classes[c].centralizer += 1;
        REQUIRE_THROWS_AS(t2.validate(), IntegrityError);
        CharacterTable t3 = table();
        t3.classes[c].geometric = !t3.classes[c].geometric;
        REQUIRE_THROWS_AS(t3.validate(), IntegrityError);
    }
    for (std::size_t i = 0; i < table().irreps.size(); ++i) {
        CharacterTable t = table();
        t.irreps[i].dim += 1;
        REQUIRE_THROWS_AS(t.validate(), IntegrityError);
    }
    CharacterTable t = table();
    t.perm24[0] = 23;
    REQUIRE_THROWS_AS(t.validate(), IntegrityError);
}

TEST_CASE("parser rejects malformed input") {
    auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return parse_character_table(in);
    };
    REQUIRE_THROWS_AS(parse(""), ParseError);
    REQUIRE_THROWS_AS(parse("class,order,central,geometric\n"), ParseError);
    const std::string hdr = "class,order,centralizer,geometric\n";
    REQUIRE_THROWS_AS(parse(hdr), ParseError);  // no class rows
    REQUIRE_THROWS_AS(parse(hdr + "1A,x,10,1\n"), ParseError);
    REQUIRE_THROWS_AS(parse(hdr + "1A,1,10,2\n"), ParseError);
    // irrep row of the wrong width
    REQUIRE_THROWS_AS(parse(hdr + "1A,1,10,1\nchi,1,1,1\n"), ParseError);
    // missing a 23-dimensional irrep for the permutation character
    REQUIRE_THROWS_AS(parse(hdr + "1A,1,1,1\nchi,1,1\n"), IntegrityError);
}

TEST_CASE("a tiny consistent table passes validation") {
    // Z/2 with an appended 23-dimensional row is not consistent; use the
    // real fixture reserialized through str() to prove parse/str stability.
    const auto& t = table();
    std::ostringstream os;
    os << "class,order,centralizer,geometric\n";
    for (const auto& c : t.classes)
        os << c.name << "," << c.order << "," << int_str(c.centralizer) << ","
           << (c.geometric ? 1 : 0) << "\n";
    for (std::size_t i = 0; i < t.irreps.size(); ++i) {
        os << t.irreps[i].name << "," << int_str(t.irreps[i].dim);
        for (const auto& v : t.values[i]) os << "," << v.str();
        os << "\n";
    }
    std::istringstream in(os.str());
    CharacterTable re = parse_character_table(in);
    REQUIRE_NOTHROW(re.validate());
    REQUIRE(re.values == t.values);
    REQUIRE(re.perm24 == t.perm24);
}
